"""
Exact-repair linear regenerating codes with d = k = n - 1.

Orientation: a message is a row vector m of length B, the codeword is
m @ G, and node j stores the alpha entries of thick column j of G.  Repair
maps act on node contents as column vectors: helper i sends
D[i->j] @ x_i (beta symbols) and the replacement computes
x_j = sum_i C[i->j] @ D[i->j] @ x_i.  Node indices are 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .gf_linalg import FieldMatrix, FieldSpec, kernel, rank


class CodeError(ValueError):
    """Malformed code, scheme or code file."""


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    alpha: int
    beta: int
    q: int
    B: int

    def __post_init__(self):
        n, k, d, a, b = self.n, self.k, self.d, self.alpha, self.beta
        if n < 3:
            raise CodeError(f"need n >= 3, got n={n}")
        if not (k == d == n - 1):
            raise CodeError(f"only k = d = n-1 is supported, got (n,k,d)=({n},{k},{d})")
        FieldSpec(self.q)
        if self.is_zero:
            return
        if not (1 <= b <= a <= (n - 1) * b):
            raise CodeError(f"need 1 <= beta <= alpha <= (n-1)beta, got alpha={a}, beta={b}")
        if not (0 <= self.B <= n * a):
            raise CodeError(f"need 0 <= B <= n*alpha, got B={self.B}")

    @property
    def is_zero(self) -> bool:
        # the empty code (alpha = beta = B = 0) is the identity for direct sums
        return self.alpha == 0 and self.beta == 0 and self.B == 0

    @property
    def field(self) -> FieldSpec:
        return FieldSpec(self.q)

    @property
    def length(self) -> int:
        return self.n * self.alpha


@dataclass(frozen=True)
class RepairScheme:
    """Download maps D[(i, j)] (beta x alpha) and combine maps C[(i, j)] (alpha x beta).

    Keys are (helper i, failed node j), 1-based.
    """

    download: dict[tuple[int, int], FieldMatrix]
    combine: dict[tuple[int, int], FieldMatrix]

    def check_shapes(self, params: CodeParams):
        a, b = params.alpha, params.beta
        for j in range(1, params.n + 1):
            for i in range(1, params.n + 1):
                if i == j:
                    continue
                if (i, j) not in self.download or (i, j) not in self.combine:
                    raise CodeError(f"repair scheme has no maps for helper {i} -> node {j}")
                D, C = self.download[i, j], self.combine[i, j]
                if D.shape != (b, a):
                    raise CodeError(f"D[{i}->{j}] has shape {D.shape}, expected ({b}, {a})")
                if C.shape != (a, b):
                    raise CodeError(f"C[{i}->{j}] has shape {C.shape}, expected ({a}, {b})")
                if D.q != params.q or C.q != params.q:
                    raise CodeError(f"maps for helper {i} -> node {j} are not over GF({params.q})")


@dataclass(frozen=True)
class RegenCode:
    params: CodeParams
    generator: FieldMatrix
    scheme: RepairScheme | None = None

    def __post_init__(self):
        p = self.params
        if self.generator.shape != (p.B, p.length):
            raise CodeError(f"generator has shape {self.generator.shape}, expected ({p.B}, {p.length})")
        if self.generator.q != p.q:
            raise CodeError(f"generator is over GF({self.generator.q}), params say GF({p.q})")
        if self.scheme is not None:
            self.scheme.check_shapes(p)

    def node(self, j: int) -> FieldMatrix:
        return self.generator.thick_col(j, self.params.alpha)


@dataclass(frozen=True)
class DualMatrix:
    h: FieldMatrix


@dataclass(frozen=True)
class HRepair:
    """n*alpha x n*alpha dual matrix with identity diagonal blocks."""

    m: FieldMatrix
    n: int
    alpha: int

    def block(self, i: int, j: int) -> FieldMatrix:
        return self.m.block(i, j, self.alpha)


@dataclass
class DataCollectionReport:
    passed: bool
    failing_subsets: list[tuple[int, ...]] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {"pass": self.passed, "failing_subsets": [list(s) for s in self.failing_subsets]}


@dataclass
class RepairReport:
    passed: bool
    failing_nodes: list[int] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {"pass": self.passed, "failing_nodes": self.failing_nodes}


def check_data_collection(code: RegenCode) -> DataCollectionReport:
    """Every k nodes must carry the whole file: rank(G restricted to S) = B."""
    p = code.params
    failing = [
        S
        for S in combinations(range(1, p.n + 1), p.k)
        if rank(code.generator.thick_cols(S, p.alpha)) != p.B
    ]
    return DataCollectionReport(not failing, failing)


def repair_residual(code: RegenCode, scheme: RepairScheme, j: int) -> FieldMatrix:
    """G_j - sum_{i != j} G_i D[i->j]^T C[i->j]^T; zero iff node j is repaired exactly."""
    p = code.params
    acc = code.node(j)
    for i in range(1, p.n + 1):
        if i != j:
            acc = acc - code.node(i) @ scheme.download[i, j].T @ scheme.combine[i, j].T
    return acc


def check_exact_repair(code: RegenCode, scheme: RepairScheme | None = None) -> RepairReport:
    scheme = scheme if scheme is not None else code.scheme
    if scheme is None:
        raise CodeError("no repair scheme given")
    scheme.check_shapes(code.params)
    failing = [j for j in range(1, code.params.n + 1) if not repair_residual(code, scheme, j).is_zero()]
    return RepairReport(not failing, failing)


def dual_parity(code: RegenCode) -> DualMatrix:
    p = code.params
    r = rank(code.generator)
    if r != p.B:
        raise CodeError(f"generator is rank deficient: rank {r} < B = {p.B}")
    ker = kernel(code.generator)
    return DualMatrix(ker.basis.T)


def extract_h_repair(code: RegenCode, scheme: RepairScheme | None = None) -> HRepair:
    """Arrange the dual rows certified by the repair scheme.

    Thick row j comes from the repair identity of node j: identity on the
    diagonal, A[j][i] = -C[i->j] D[i->j] elsewhere.
    """
    scheme = scheme if scheme is not None else code.scheme
    report = check_exact_repair(code, scheme)
    if not report.passed:
        raise CodeError(f"scheme does not repair nodes {report.failing_nodes}")
    p, f = code.params, code.params.field
    rows = []
    for j in range(1, p.n + 1):
        blocks = [
            FieldMatrix.identity(f, p.alpha) if i == j else -(scheme.combine[i, j] @ scheme.download[i, j])
            for i in range(1, p.n + 1)
        ]
        rows.append(FieldMatrix.hstack(f, blocks, p.alpha))
    m = FieldMatrix.vstack(f, rows, p.length)
    if not (code.generator @ m.T).is_zero():
        raise CodeError("H_repair rows are not orthogonal to the generator")
    hr = HRepair(m, p.n, p.alpha)
    for i in range(1, p.n + 1):
        for j in range(1, p.n + 1):
            if i != j and rank(hr.block(i, j)) > p.beta:
                raise CodeError(f"block A[{i}][{j}] has rank above beta = {p.beta}")
    return hr


def zero_code(n: int, q: int) -> RegenCode:
    f = FieldSpec(q)
    params = CodeParams(n, n - 1, n - 1, 0, 0, q, 0)
    empty = FieldMatrix.zeros(f, 0, 0)
    maps = {(i, j): empty for i in range(1, n + 1) for j in range(1, n + 1) if i != j}
    return RegenCode(params, empty, RepairScheme(maps, dict(maps)))


def direct_sum(a: RegenCode, b: RegenCode) -> RegenCode:
    """Space sharing: each node stores its share of ``a`` followed by its share of ``b``."""
    pa, pb = a.params, b.params
    if (pa.n, pa.k, pa.d, pa.q) != (pb.n, pb.k, pb.d, pb.q):
        raise CodeError(
            f"cannot add codes with (n,k,d,q)=({pa.n},{pa.k},{pa.d},{pa.q}) and ({pb.n},{pb.k},{pb.d},{pb.q})"
        )
    f = pa.field
    params = CodeParams(pa.n, pa.k, pa.d, pa.alpha + pb.alpha, pa.beta + pb.beta, pa.q, pa.B + pb.B)
    g = FieldMatrix.hstack(
        f,
        [FieldMatrix.block_diag(f, a.node(j), b.node(j)) for j in range(1, pa.n + 1)],
        params.B,
    )
    scheme = None
    if a.scheme is not None and b.scheme is not None:
        keys = a.scheme.download.keys()
        scheme = RepairScheme(
            {key: FieldMatrix.block_diag(f, a.scheme.download[key], b.scheme.download[key]) for key in keys},
            {key: FieldMatrix.block_diag(f, a.scheme.combine[key], b.scheme.combine[key]) for key in keys},
        )
    return RegenCode(params, g, scheme)


# JSON code files --------------------------------------------------------------

_PARAM_KEYS = ("q", "n", "k", "d", "alpha", "beta", "B")


def code_to_dict(code: RegenCode) -> dict[str, Any]:
    p = code.params
    out: dict[str, Any] = {key: getattr(p, key) for key in _PARAM_KEYS}
    out["G"] = code.generator.tolist()
    if code.scheme is not None:
        repair: dict[str, dict[str, Any]] = {}
        for j in range(1, p.n + 1):
            repair[str(j)] = {
                str(i): {"D": code.scheme.download[i, j].tolist(), "C": code.scheme.combine[i, j].tolist()}
                for i in range(1, p.n + 1)
                if i != j
            }
        out["repair"] = repair
    return out


def _matrix(obj, where: str, q: int, shape: tuple[int, int]) -> FieldMatrix:
    rows, cols = shape
    if not isinstance(obj, list) or len(obj) != rows:
        got = len(obj) if isinstance(obj, list) else type(obj).__name__
        raise CodeError(f"{where}: expected {rows} rows, got {got}")
    for r, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise CodeError(f"{where}[{r}]: expected {cols} entries, got {got}")
        for c, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < q:
                raise CodeError(f"{where}[{r}][{c}]: {x!r} is not a residue in [0, {q})")
    return FieldMatrix(q, obj, shape=(rows, cols))


def code_from_dict(obj: Any) -> RegenCode:
    if not isinstance(obj, dict):
        raise CodeError("code file must hold a JSON object")
    missing = [key for key in (*_PARAM_KEYS, "G") if key not in obj]
    if missing:
        raise CodeError(f"code file is missing keys: {', '.join(missing)}")
    for key in _PARAM_KEYS:
        if not isinstance(obj[key], int) or isinstance(obj[key], bool):
            raise CodeError(f"{key}: expected an integer, got {obj[key]!r}")
    try:
        params = CodeParams(*(obj[key] for key in ("n", "k", "d", "alpha", "beta", "q", "B")))
    except ValueError as exc:
        raise CodeError(str(exc)) from None
    g = _matrix(obj["G"], "G", params.q, (params.B, params.length))
    scheme = None
    if obj.get("repair") is not None:
        rep = obj["repair"]
        if not isinstance(rep, dict):
            raise CodeError("repair: expected an object keyed by failed node")
        download, combine = {}, {}
        for j in range(1, params.n + 1):
            node = rep.get(str(j))
            if not isinstance(node, dict):
                raise CodeError(f"repair[{j}]: missing maps for failed node {j}")
            for i in range(1, params.n + 1):
                if i == j:
                    continue
                maps = node.get(str(i))
                if not isinstance(maps, dict) or "D" not in maps or "C" not in maps:
                    raise CodeError(f"repair[{j}][{i}]: expected an object with D and C")
                download[i, j] = _matrix(maps["D"], f"repair[{j}][{i}].D", params.q, (params.beta, params.alpha))
                combine[i, j] = _matrix(maps["C"], f"repair[{j}][{i}].C", params.q, (params.alpha, params.beta))
        scheme = RepairScheme(download, combine)
    return RegenCode(params, g, scheme)


def dumps_code(code: RegenCode) -> str:
    return json.dumps(code_to_dict(code), indent=1)


def loads_code(text: str) -> RegenCode:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodeError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return code_from_dict(obj)

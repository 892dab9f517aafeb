"""
Small structured ER codes with explicit repair schemes.

* single-parity MSR code: (n, n-1) MDS code, alpha = beta = 1;
* repair-by-transfer MBR code: one message symbol per edge of K_n;
* direct sums of the above (space sharing).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .code_model import CodeError, CodeParams, RegenCode, RepairScheme, direct_sum
from .gf_linalg import FieldMatrix, FieldSpec

KINDS = ("msr", "mbr", "sum")


def gen_msr_single_parity(n: int, q: int = 2) -> RegenCode:
    """G = [I_{n-1} | -1]: the symbols of all n nodes sum to zero.

    Node j is rebuilt as minus the sum of the other n-1 symbols.
    """
    if n < 3:
        raise CodeError(f"need n >= 3, got {n}")
    f = FieldSpec(q)
    g = np.zeros((n - 1, n), dtype=np.int64)
    g[:, : n - 1] = np.eye(n - 1, dtype=np.int64)
    g[:, n - 1] = q - 1
    one = FieldMatrix(f, [[1]])
    minus_one = FieldMatrix(f, [[q - 1]])
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    scheme = RepairScheme({p: one for p in pairs}, {p: minus_one for p in pairs})
    return RegenCode(CodeParams(n, n - 1, n - 1, 1, 1, q, n - 1), FieldMatrix(f, g), scheme)


def gen_mbr_repair_by_transfer(n: int, q: int = 2) -> RegenCode:
    """Message symbols sit on the edges of K_n (lexicographic order).

    Each node stores its n-1 incident edge symbols, sorted by edge index,
    and a lost symbol is copied from the other endpoint of its edge.
    """
    if n < 3:
        raise CodeError(f"need n >= 3, got {n}")
    f = FieldSpec(q)
    edges = list(combinations(range(1, n + 1), 2))
    alpha, B = n - 1, len(edges)
    incident = {v: [e for e, uv in enumerate(edges) if v in uv] for v in range(1, n + 1)}
    slot = {(v, e): p for v in incident for p, e in enumerate(incident[v])}
    g = np.zeros((B, n * alpha), dtype=np.int64)
    for v, es in incident.items():
        for p, e in enumerate(es):
            g[e, (v - 1) * alpha + p] = 1
    download, combine = {}, {}
    for e, (u, v) in enumerate(edges):
        for i, j in ((u, v), (v, u)):
            d = np.zeros((1, alpha), dtype=np.int64)
            d[0, slot[i, e]] = 1
            c = np.zeros((alpha, 1), dtype=np.int64)
            c[slot[j, e], 0] = 1
            download[i, j] = FieldMatrix(f, d)
            combine[i, j] = FieldMatrix(f, c)
    params = CodeParams(n, n - 1, n - 1, alpha, 1, q, B)
    return RegenCode(params, FieldMatrix(f, g), RepairScheme(download, combine))


def gen_space_share(a: RegenCode, b: RegenCode) -> RegenCode:
    if a.params.n != b.params.n or a.params.q != b.params.q:
        raise CodeError("space sharing needs codes with equal n and q")
    return direct_sum(a, b)


@dataclass(frozen=True)
class InstanceRecipe:
    kind: str
    n: int
    q: int = 2
    operands: tuple["InstanceRecipe", ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise CodeError(f"unknown instance kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.kind == "sum" and len(self.operands) != 2:
            raise CodeError("a sum recipe needs exactly two operands")

    @property
    def label(self) -> str:
        if self.kind == "sum":
            return "(" + "+".join(op.label for op in self.operands) + ")"
        return f"{self.kind}{self.n}"

    def build(self) -> RegenCode:
        if self.kind == "msr":
            return gen_msr_single_parity(self.n, self.q)
        if self.kind == "mbr":
            return gen_mbr_repair_by_transfer(self.n, self.q)
        a, b = (op.build() for op in self.operands)
        return gen_space_share(a, b)


def parse_recipe(words: list[str], n: int, q: int) -> InstanceRecipe:
    """``["msr"]``, ``["mbr"]`` or ``["sum", X, Y]`` with X, Y in msr/mbr."""
    if not words:
        raise CodeError("empty recipe")
    kind, rest = words[0], words[1:]
    if kind == "sum":
        if len(rest) != 2 or any(w not in ("msr", "mbr") for w in rest):
            raise CodeError("usage: sum {msr|mbr} {msr|mbr}")
        return InstanceRecipe("sum", n, q, tuple(InstanceRecipe(w, n, q) for w in rest))
    if rest:
        raise CodeError(f"unexpected arguments after {kind!r}: {' '.join(rest)}")
    return InstanceRecipe(kind, n, q)


def corpus(ns=(4, 5, 6), q: int = 2) -> list[InstanceRecipe]:
    """MSR, MBR and the three direct sums for every n."""
    out = []
    for n in ns:
        msr, mbr = InstanceRecipe("msr", n, q), InstanceRecipe("mbr", n, q)
        out += [msr, mbr]
        out += [InstanceRecipe("sum", n, q, ops) for ops in ((msr, mbr), (mbr, mbr), (msr, msr))]
    return out

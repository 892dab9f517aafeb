"""
The iterated intersection chain H^(n), H^(n-1), ..., H^(3) built from an
H_repair matrix, and certifiers for the rank relations it satisfies.

Level t keeps thick columns j = n-t+1 .. n.  Thick column j of level t
is a basis of

    S(H^(t+1)_j)  ∩  S(H^(t+1) restricted to thick columns n-t .. j-1).

Block A^(t)[i][j] is the alpha-row slice i of thick column j.  Everything
certified below is a rank, hence independent of the basis chosen.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .code_model import HRepair
from .gf_linalg import FieldMatrix, rank, rref, span, subspace_intersection

log = logging.getLogger(__name__)


def pos(x: int) -> int:
    return max(x, 0)


@dataclass
class ChainLevel:
    t: int
    n: int
    alpha: int
    cols: dict[int, FieldMatrix]

    @property
    def first(self) -> int:
        return self.n - self.t + 1

    @property
    def nodes(self) -> range:
        return range(self.first, self.n + 1)

    @property
    def h(self) -> FieldMatrix:
        f = next(iter(self.cols.values())).field
        return FieldMatrix.hstack(f, [self.cols[j] for j in self.nodes], self.n * self.alpha)

    def restrict(self, lo: int, hi: int) -> FieldMatrix:
        """Thick columns lo..hi (inclusive) side by side."""
        f = next(iter(self.cols.values())).field
        return FieldMatrix.hstack(f, [self.cols[j] for j in range(lo, hi + 1)], self.n * self.alpha)

    def block(self, i: int, j: int) -> FieldMatrix:
        return self.cols[j][(i - 1) * self.alpha : i * self.alpha, :]


@dataclass
class LevelStats:
    t: int
    rank: int
    col_ranks: dict[int, int]
    block_ranks: dict[tuple[int, int], int]
    prefix_ranks: dict[int, int]
    delta: dict[int, int]
    slack: dict[int, int]

    def diag(self, j: int) -> int:
        return self.block_ranks[j, j]

    def off(self, j: int, lo: int) -> int:
        """Sum of rho(A[j][l]) for l = lo .. j-1."""
        return sum(self.block_ranks[j, l] for l in range(lo, j))


@dataclass
class DualChain:
    n: int
    alpha: int
    levels: dict[int, ChainLevel]
    stats: dict[int, LevelStats] = field(default_factory=dict)

    @property
    def ts(self) -> list[int]:
        return sorted(self.levels, reverse=True)

    def rank(self, t: int) -> int:
        return self.stats[t].rank


def _level_stats(level: ChainLevel) -> LevelStats:
    n, first = level.n, level.first
    col_ranks = {j: rank(level.cols[j]) for j in level.nodes}
    block_ranks = {(i, j): rank(level.block(i, j)) for i in range(1, n + 1) for j in level.nodes}
    prefix = {j: rank(level.restrict(first, j)) for j in level.nodes}
    delta, slack = {}, {}
    for j in level.nodes:
        delta[j] = prefix[j] - (prefix[j - 1] if j > first else 0)
        if j > first:
            lower = pos(block_ranks[j, j] - sum(block_ranks[j, l] for l in range(first, j)))
            slack[j] = delta[j] - lower
    return LevelStats(level.t, prefix[n], col_ranks, block_ranks, prefix, delta, slack)


def _random_invertible(size: int, q: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        m = rng.integers(0, q, (size, size))
        if size == 0 or len(rref(m, q)[1]) == size:
            return m


def build_chain(hr: HRepair, scramble: np.random.Generator | None = None) -> DualChain:
    """Run the level-by-level intersection procedure down to t = 3.

    ``scramble`` replaces every canonical intersection basis by a random
    other basis of the same space; certified ranks must not change.
    """
    n, a = hr.n, hr.alpha
    if n < 4:
        raise ValueError(f"the chain needs n >= 4, got n = {n}")
    top = ChainLevel(n, n, a, {j: hr.m.thick_col(j, a) for j in range(1, n + 1)})
    levels = {n: top}
    for t in range(n - 1, 2, -1):
        prev = levels[t + 1]
        cols = {}
        for j in range(n - t + 1, n + 1):
            meet = subspace_intersection(span(prev.cols[j]), span(prev.restrict(n - t, j - 1)))
            cols[j] = meet.basis
            if scramble is not None:
                mix = _random_invertible(meet.dim, meet.field.q, scramble)
                cols[j] = meet.basis @ FieldMatrix(meet.field, mix.reshape(meet.dim, meet.dim))
        levels[t] = ChainLevel(t, n, a, cols)
        log.debug("level %d: column counts %s", t, {j: c.cols for j, c in cols.items()})
    chain = DualChain(n, a, levels)
    chain.stats = {t: _level_stats(lv) for t, lv in levels.items()}
    return chain


def level_stats(chain: DualChain, t: int) -> LevelStats:
    if t not in chain.levels:
        raise KeyError(f"level {t} not in chain (levels {chain.ts})")
    return chain.stats[t]


# certifiers ----------------------------------------------------------------


@dataclass
class Check:
    name: str
    where: dict[str, int]
    lhs: Fraction
    rhs: Fraction
    relation: str
    passed: bool

    @property
    def margin(self) -> Fraction:
        return self.lhs - self.rhs

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.name,
            **self.where,
            "relation": self.relation,
            "lhs": frac_json(self.lhs),
            "rhs": frac_json(self.rhs),
            "margin": frac_json(self.margin),
            "pass": self.passed,
        }


def _cmp(name: str, where: dict[str, int], lhs, rhs, relation: str) -> Check:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    ok = {"==": lhs == rhs, ">=": lhs >= rhs, "<=": lhs <= rhs}[relation]
    return Check(name, where, lhs, rhs, relation, ok)


@dataclass
class CertReport:
    name: str
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def violations(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def find(self, **where) -> Check:
        return next(c for c in self.checks if all(c.where.get(k) == v for k, v in where.items()))

    def to_dict(self) -> dict[str, Any]:
        return {"pass": self.passed, "violations": len(self.violations), "checks": [c.to_dict() for c in self.checks]}


def certify_lemma4(chain: DualChain) -> CertReport:
    n, st = chain.n, chain.stats
    checks = []
    for t in chain.ts:
        for j in chain.levels[t].nodes:
            checks.append(_cmp("lemma4a", {"t": t, "j": j}, st[t].col_ranks[j], st[t].diag(j), "=="))
    for t in range(n - 1, 2, -1):
        up = chain.levels[t + 1]
        for j in range(n - t + 1, n + 1):
            inc = rank(up.restrict(n - t, j)) - rank(up.restrict(n - t, j - 1))
            checks.append(_cmp("lemma4b", {"t": t, "j": j}, st[t].diag(j), st[t + 1].diag(j) - inc, "=="))
        for j in range(n - t + 2, n + 1):
            lhs = st[t].off(j, n - t + 1)
            rhs = st[t + 1].off(j, n - t) - st[t].diag(j)
            checks.append(_cmp("lemma4c", {"t": t, "j": j}, lhs, rhs, "<="))
    return CertReport("lemma4", checks)


def theorem6_rhs(stats: LevelStats, n: int, s: int) -> Fraction:
    t = stats.t
    first = n - t + 1
    diag = sum(stats.diag(j) for j in range(first, n + 1))
    off = sum(stats.off(j, first) for j in range(first + 1, n + 1))
    return Fraction(2 * ((s + 1) * diag - off), (s + 1) * (s + 2))


def certify_theorem6(chain: DualChain) -> CertReport:
    n = chain.n
    checks = []
    for s in range(1, n - 2):
        for t in range(3 + s, n + 1):
            st = chain.stats[t]
            checks.append(_cmp("theorem6", {"s": s, "t": t}, st.rank, theorem6_rhs(st, n, s), ">="))
    return CertReport("theorem6", checks)


def certify_cascade(chain: DualChain) -> CertReport:
    checks = [
        _cmp("cascade", {"t": t}, chain.rank(t), chain.rank(t - 1), ">=")
        for t in chain.ts
        if t - 1 in chain.levels
    ]
    return CertReport("cascade", checks)


def slack_start_rhs(stats: LevelStats, n: int) -> Fraction:
    """Lower bound on the level's slack sum from comparing it with the next level (s = 1)."""
    t = stats.t
    f1, f2 = n - t + 1, n - t + 2
    rest = range(f2 + 1, n + 1)
    p2 = pos(stats.diag(f2) - stats.block_ranks[f2, f1])
    pj = sum(pos(stats.diag(j) - stats.off(j, f1)) for j in rest)
    sj = sum(stats.off(j, f1) for j in rest)
    num = -stats.diag(f1) + stats.diag(f2) + 2 * sum(stats.diag(j) for j in rest) - (2 * p2 + 3 * pj + sj)
    return Fraction(num, 3)


def slack_step_rhs(stats: LevelStats, n: int, s: int) -> Fraction:
    """Lower bound on the slack sum used when passing from s to s + 1."""
    t = stats.t
    f1, f2 = n - t + 1, n - t + 2
    rest = range(f2 + 1, n + 1)
    p2 = pos(stats.diag(f2) - stats.block_ranks[f2, f1])
    pj = sum(pos(stats.diag(j) - stats.off(j, f1)) for j in rest)
    sj = sum(stats.off(j, f1) for j in rest)
    num = (
        -(s + 1) * (s + 2) * stats.diag(f1)
        + 2 * (s + 1) * stats.diag(f2)
        + 2 * (s + 2) * sum(stats.diag(j) for j in rest)
        - (s + 1) * (s + 4) * p2
        - (s + 2) * (s + 3) * pj
        - 2 * sj
    )
    return Fraction(num, (s + 2) * (s + 3))


def certify_slack(chain: DualChain) -> CertReport:
    n = chain.n
    checks = []
    for t in chain.ts:
        for j, a in chain.stats[t].slack.items():
            checks.append(_cmp("slack_nonneg", {"t": t, "j": j}, a, 0, ">="))
    for t in range(4, n + 1):
        total = sum(chain.stats[t].slack.values())
        checks.append(_cmp("slack_start", {"s": 1, "t": t}, total, slack_start_rhs(chain.stats[t], n), ">="))
    for s in range(1, n - 3):
        for t in range(4 + s, n + 1):
            total = sum(chain.stats[t].slack.values())
            checks.append(_cmp("slack_step", {"s": s, "t": t}, total, slack_step_rhs(chain.stats[t], n, s), ">="))
    return CertReport("slack", checks)


certify_appendixB_slack = certify_slack


def certify_all(chain: DualChain) -> dict[str, CertReport]:
    return {
        "lemma4": certify_lemma4(chain),
        "cascade": certify_cascade(chain),
        "theorem6": certify_theorem6(chain),
        "slack": certify_slack(chain),
    }


# serialization --------------------------------------------------------------


def frac_json(x: Fraction) -> dict[str, int]:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def chain_report(chain: DualChain, reports: dict[str, CertReport] | None = None) -> dict[str, Any]:
    reports = reports if reports is not None else certify_all(chain)
    levels = []
    for t in chain.ts:
        st = chain.stats[t]
        nodes = list(chain.levels[t].nodes)
        levels.append(
            {
                "t": t,
                "rank": st.rank,
                "thick_columns": nodes,
                "column_ranks": {str(j): st.col_ranks[j] for j in nodes},
                "block_ranks": [[st.block_ranks[i, j] for j in nodes] for i in range(1, chain.n + 1)],
                "delta": {str(j): st.delta[j] for j in nodes},
                "slack": {str(j): a for j, a in st.slack.items()},
            }
        )
    return {
        "n": chain.n,
        "alpha": chain.alpha,
        "levels": levels,
        "verdicts": {name: r.to_dict() for name, r in reports.items()},
        "pass": all(r.passed for r in reports.values()),
    }

"""
File-size and dual-rank bounds for (n, k = n-1, d = n-1) regenerating
codes, evaluated in exact rational arithmetic, and the normalized
(alpha/B, beta/B) trade-off curves they induce.

Ranges of alpha are stored as rational multiples of beta.  A bound is only
defined for beta <= alpha <= (n-1) beta; evaluators reject anything else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

Rational = Fraction


def _floor(x: Fraction) -> int:
    return math.floor(x)


def _ceil(x: Fraction) -> int:
    return math.ceil(x)


def _exact(x: Fraction):
    return x.numerator if x.denominator == 1 else x


_ROUNDING: dict[str, Callable[[Fraction], Any]] = {"floor": _floor, "ceil": _ceil, "none": _exact}


@dataclass(frozen=True)
class Piece:
    """(coeff_alpha * alpha + coeff_beta * beta) / denom on lo*beta <= alpha <= hi*beta."""

    coeff_alpha: int
    coeff_beta: int
    denom: int
    rounding: str
    lo: Fraction
    hi: Fraction
    label: str = ""

    def exact(self, alpha, beta) -> Fraction:
        return Fraction(self.coeff_alpha * alpha + self.coeff_beta * beta) / self.denom

    def value(self, alpha, beta):
        return _ROUNDING[self.rounding](self.exact(alpha, beta))

    def covers(self, alpha, beta) -> bool:
        ratio = Fraction(alpha) / Fraction(beta)
        return self.lo <= ratio <= self.hi


@dataclass(frozen=True)
class PiecewiseBound:
    """Piecewise-linear bound; ``sense`` says how overlapping pieces combine.

    Upper bounds on B take the minimum at shared endpoints, lower bounds on
    a rank take the maximum.
    """

    name: str
    pieces: tuple[Piece, ...]
    sense: str = "upper"

    @property
    def lo(self) -> Fraction:
        return min(p.lo for p in self.pieces)

    @property
    def hi(self) -> Fraction:
        return max(p.hi for p in self.pieces)

    def applicable(self, alpha, beta) -> list[Piece]:
        if beta <= 0:
            raise ValueError(f"{self.name}: beta must be positive, got {beta}")
        found = [p for p in self.pieces if p.covers(alpha, beta)]
        if not found:
            raise ValueError(
                f"{self.name}: alpha={alpha} outside [{self.lo}*beta, {self.hi}*beta] for beta={beta}"
            )
        return found

    def _pick(self, values):
        return min(values) if self.sense == "upper" else max(values)

    def __call__(self, alpha, beta):
        return self._pick([p.value(alpha, beta) for p in self.applicable(alpha, beta)])

    def exact(self, alpha, beta) -> Fraction:
        """Value without the floor/ceil, used for normalized curves."""
        return self._pick([p.exact(alpha, beta) for p in self.applicable(alpha, beta)])

    def breakpoints(self) -> list[Fraction]:
        return sorted({p.lo for p in self.pieces} | {p.hi for p in self.pieces})

    def boundary_mismatches(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        """Shared endpoints where adjacent pieces disagree (before rounding), at beta = 1."""
        out = []
        for x in self.breakpoints():
            vals = {p.exact(x, 1) for p in self.pieces if p.lo <= x <= p.hi}
            if len(vals) > 1:
                out.append((x, min(vals), max(vals)))
        return out


def _check_range(n: int, alpha, beta):
    if n < 4:
        raise ValueError(f"need n >= 4, got n={n}")
    if beta < 1 or not (beta <= alpha <= (n - 1) * beta):
        raise ValueError(f"need 1 <= beta <= alpha <= (n-1)beta, got alpha={alpha}, beta={beta}, n={n}")


# cut-set bound ----------------------------------------------------------------


def cutset_bound(n: int, k: int, d: int, alpha, beta):
    """sum_{i=0}^{k-1} min(alpha, (d - i) beta); exact for rational inputs too."""
    if not (1 <= k <= d <= n - 1):
        raise ValueError(f"need 1 <= k <= d <= n-1, got (n,k,d)=({n},{k},{d})")
    if alpha <= 0 or beta <= 0:
        raise ValueError(f"alpha and beta must be positive, got alpha={alpha}, beta={beta}")
    return sum(min(alpha, (d - i) * beta) for i in range(k))


def fr_dual_form(n: int, k: int, alpha, beta):
    """n alpha minus the dual-rank lower bound (n-k) alpha + sum (alpha - (j-1) beta)^+."""
    rank_lb = (n - k) * alpha + sum(max(alpha - (j - 1) * beta, 0) for j in range(n - k + 1, n + 1))
    return n * alpha - rank_lb


@dataclass
class IdentityReport:
    passed: bool
    lhs: Any
    rhs: Any

    def to_dict(self):
        return {"pass": self.passed, "lhs": str(self.lhs), "rhs": str(self.rhs)}


def fr_dual_identity_check(n: int, k: int, d: int, alpha, beta) -> IdentityReport:
    if d != n - 1:
        raise ValueError(f"the dual re-derivation assumes d = n-1, got d={d}, n={n}")
    lhs = fr_dual_form(n, k, alpha, beta)
    rhs = cutset_bound(n, k, d, alpha, beta)
    return IdentityReport(lhs == rhs, lhs, rhs)


# main bound and its dual form -------------------------------------------------


def theorem1_pieces(n: int) -> PiecewiseBound:
    d = n - 1
    pieces = [
        Piece(r * (r - 1) * n, n * (n - 1), r * r + r, "floor", Fraction(d, r), Fraction(d, r - 1), f"r={r}")
        for r in range(2, n - 1)
    ]
    pieces.append(Piece(n - 2, 1, 1, "none", Fraction(d, n - 1), Fraction(d, n - 2), "msr"))
    return PiecewiseBound(f"theorem1(n={n})", tuple(pieces), "upper")


def theorem5_pieces(n: int) -> PiecewiseBound:
    d = n - 1
    pieces = [
        Piece(2 * r * n, -n * (n - 1), r * r + r, "ceil", Fraction(d, r), Fraction(d, r - 1), f"r={r}")
        for r in range(2, n - 1)
    ]
    pieces.append(Piece(2, -1, 1, "none", Fraction(d, n - 1), Fraction(d, n - 2), "msr"))
    return PiecewiseBound(f"theorem5(n={n})", tuple(pieces), "lower")


def theorem1_bound(n: int, alpha: int, beta: int) -> int:
    """Upper bound on the file size B of an ER linear code."""
    _check_range(n, alpha, beta)
    return theorem1_pieces(n)(alpha, beta)


def theorem5_rank_bound(n: int, alpha: int, beta: int) -> int:
    """Lower bound on the rank of the dual (parity-check) matrix."""
    _check_range(n, alpha, beta)
    return theorem5_pieces(n)(alpha, beta)


def rank_bound_from_chain_formula(n: int, alpha: int, beta: int, r: int):
    """(2 r n alpha - n(n-1) beta) / (r^2 + r): the s = r - 1, t = n instance of the chain bound."""
    return Fraction(2 * r * n * alpha - n * (n - 1) * beta, r * r + r)


def theorem2_rank_bound_433(alpha: int, beta: int) -> int:
    _check_range(4, alpha, beta)
    pb = PiecewiseBound(
        "theorem2(4,3,3)",
        (
            Piece(8, -6, 3, "ceil", Fraction(3, 2), Fraction(3), "ceil((8a-6b)/3)"),
            Piece(2, -1, 1, "none", Fraction(1), Fraction(3, 2), "2a-b"),
        ),
        "lower",
    )
    return pb(alpha, beta)


def bound1_544(alpha: int, beta: int) -> int:
    return _ceil(Fraction(10 * (alpha - beta), 3))


def bound2_544(alpha: int, beta: int) -> int:
    return _ceil(Fraction(15 * alpha - 10 * beta, 6))


def theorem4_rank_bound_544(alpha: int, beta: int) -> int:
    _check_range(5, alpha, beta)
    pb = PiecewiseBound(
        "theorem4(5,4,4)",
        (
            Piece(10, -10, 3, "ceil", Fraction(2), Fraction(4), "bound1"),
            Piece(15, -10, 6, "ceil", Fraction(4, 3), Fraction(2), "bound2"),
            Piece(2, -1, 1, "none", Fraction(1), Fraction(4, 3), "2a-b"),
        ),
        "lower",
    )
    return pb(alpha, beta)


def theorem1_pieces_544() -> PiecewiseBound:
    """The (5,4,4) specialization as printed, kept separate from the general formula."""
    return PiecewiseBound(
        "theorem1(5,4,4)",
        (
            Piece(5, 10, 3, "floor", Fraction(2), Fraction(4)),
            Piece(15, 10, 6, "floor", Fraction(4, 3), Fraction(2)),
            Piece(3, 1, 1, "none", Fraction(1), Fraction(4, 3)),
        ),
        "upper",
    )


# comparison bounds for (5,4,4) -------------------------------------------------


def sassenkum_pieces() -> PiecewiseBound:
    return PiecewiseBound(
        "sassenkum(5,4,4)",
        (
            Piece(7, 22, 5, "floor", Fraction(18, 7), Fraction(4)),
            Piece(7, 6, 3, "floor", Fraction(3, 2), Fraction(18, 7)),
            Piece(3, 1, 1, "none", Fraction(1), Fraction(3, 2)),
        ),
        "upper",
    )


def duursma_pieces() -> PiecewiseBound:
    return PiecewiseBound(
        "duursma(5,4,4)",
        (
            Piece(7, 22, 5, "floor", Fraction(23, 7), Fraction(4)),
            Piece(21, 57, 14, "floor", Fraction(19, 7), Fraction(23, 7)),
            Piece(11, 19, 6, "floor", Fraction(5, 2), Fraction(19, 7)),
            Piece(13, 14, 6, "floor", Fraction(2), Fraction(5, 2)),
            Piece(7, 6, 3, "floor", Fraction(3, 2), Fraction(2)),
            Piece(3, 1, 1, "none", Fraction(1), Fraction(3, 2)),
        ),
        "upper",
    )


def sassenkum_544(alpha: int, beta: int) -> int:
    _check_range(5, alpha, beta)
    return sassenkum_pieces()(alpha, beta)


def duursma_544(alpha: int, beta: int) -> int:
    _check_range(5, alpha, beta)
    return duursma_pieces()(alpha, beta)


# normalized trade-off -----------------------------------------------------------


@dataclass
class TradeoffCurve:
    """Deflection points (alpha/B, beta/B), ordered by strictly decreasing beta/B."""

    label: str
    points: list[tuple[Fraction, Fraction]] = field(default_factory=list)

    def __post_init__(self):
        ys = [y for _, y in self.points]
        if any(a <= b for a, b in zip(ys, ys[1:])):
            raise ValueError(f"{self.label}: beta/B must be strictly decreasing")

    def is_convex(self) -> bool:
        """Convex toward the origin: slopes of successive segments increase."""
        pts = self.points
        for a, b, c in zip(pts, pts[1:], pts[2:]):
            cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
            if cross < 0:
                return False
        return True

    def contains(self, x: Fraction, y: Fraction) -> bool:
        """Whether (x, y) lies on the polyline."""
        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            if min(y0, y1) <= y <= max(y0, y1) and min(x0, x1) <= x <= max(x0, x1):
                if (x1 - x0) * (y - y0) == (y1 - y0) * (x - x0):
                    return True
        return (x, y) in self.points

    def to_rows(self) -> list[dict[str, Any]]:
        return [
            {
                "curve_label": self.label,
                "alpha_over_B_num": x.numerator,
                "alpha_over_B_den": x.denominator,
                "beta_over_B_num": y.numerator,
                "beta_over_B_den": y.denominator,
            }
            for x, y in self.points
        ]


def curve_from_bound(label: str, bound: Callable[[Fraction, int], Fraction], ratios: Sequence[Fraction]) -> TradeoffCurve:
    """Normalize an exact (unrounded) file-size bound at the given alpha/beta ratios."""
    pts = []
    for ratio in sorted(set(ratios)):
        B = Fraction(bound(ratio, 1))
        pts.append((ratio / B, 1 / B))
    return TradeoffCurve(label, pts)


def achievable_points(n: int) -> list[tuple[Fraction, Fraction]]:
    """Canonical-code operating points r = 2..n-1 plus the MSR point."""
    if n < 4:
        raise ValueError(f"need n >= 4, got n={n}")
    pts = [(Fraction(r, n * (r - 1)), Fraction(r, n * (n - 1))) for r in range(2, n)]
    pts.append((Fraction(1, n - 1), Fraction(1, n - 1)))
    return sorted(pts, key=lambda p: p[1], reverse=True)


def achievable_curve(n: int) -> TradeoffCurve:
    return TradeoffCurve("achievable", achievable_points(n))


def outer_curve(n: int) -> TradeoffCurve:
    pb = theorem1_pieces(n)
    return curve_from_bound("theorem1", pb.exact, pb.breakpoints())


def cutset_curve(n: int) -> TradeoffCurve:
    d = n - 1
    ratios = [Fraction(d - i) for i in range(d)]
    return curve_from_bound("cutset", lambda a, b: cutset_bound(n, d, d, a, b), ratios)


def comparison_curves_544() -> list[TradeoffCurve]:
    return [
        curve_from_bound("sassenkum", sassenkum_pieces().exact, sassenkum_pieces().breakpoints()),
        curve_from_bound("duursma", duursma_pieces().exact, duursma_pieces().breakpoints()),
    ]


def all_curves(n: int) -> list[TradeoffCurve]:
    curves = [cutset_curve(n), outer_curve(n), achievable_curve(n)]
    if n == 5:
        curves += comparison_curves_544()
    return curves


@dataclass
class RegionReport:
    n: int
    segments: list[dict[str, Any]]
    off_curve: list[tuple[Fraction, Fraction]]

    @property
    def passed(self) -> bool:
        return all(s["pass"] for s in self.segments) and not self.off_curve


def region_match(n: int) -> RegionReport:
    """Achievable points versus the outer bound: every segment identity holds exactly."""
    pts = {r: (Fraction(r, n * (r - 1)), Fraction(r, n * (n - 1))) for r in range(2, n)}
    msr = (Fraction(1, n - 1), Fraction(1, n - 1))
    segments = []
    for r in range(2, n - 1):
        for x, y in (pts[r], pts[r + 1]):
            lhs = r * (r - 1) * n * x + n * (n - 1) * y
            segments.append({"segment": f"r={r}", "point": (x, y), "lhs": lhs, "rhs": r * r + r, "pass": lhs == r * r + r})
    for x, y in (msr, pts[n - 1]):
        lhs = (n - 2) * x + y
        segments.append({"segment": "msr", "point": (x, y), "lhs": lhs, "rhs": 1, "pass": lhs == 1})
    outer = outer_curve(n)
    off = [p for p in achievable_points(n) if not outer.contains(*p)]
    return RegionReport(n, segments, off)


def dominance_grid(beta_max: int = 12) -> list[tuple[int, int, int, int, int]]:
    """(alpha, beta, theorem1, sassenkum, duursma) for every integer point with beta <= alpha <= 4 beta."""
    return [
        (a, b, theorem1_bound(5, a, b), sassenkum_544(a, b), duursma_544(a, b))
        for b in range(1, beta_max + 1)
        for a in range(b, 4 * b + 1)
    ]

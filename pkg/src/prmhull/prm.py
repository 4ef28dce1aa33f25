"""Projective and affine Reed-Muller codes and their closed-form oracles.

The construction side builds generator matrices by evaluating reduced
monomials at projective points. The oracle side evaluates every closed
form (dimension, distance, dual description, self-duality/orthogonality/
LCD classification, hull dimension and hull basis where known) so the
two can be checked against each other on any parameter point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .code import LinearCode, code_from_rows, hull, is_lcd, is_self_dual, is_self_orthogonal
from .errors import DimensionMismatch, InternalInconsistency, OutOfRange
from .exactla import MatrixFq
from .field import Field
from .geometry import (
    Monomial,
    _evaluate_rows,
    affine_points,
    evaluate,
    evaluate_rows,
    monomials_of_degree,
    num_projective_points,
    projective_points,
    reduced_basis_monomials,
)


class _NoClosedForm:
    """Sentinel: no closed-form value is known for this parameter point."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "NoClosedForm"


NO_CLOSED_FORM = _NoClosedForm()


@dataclass(frozen=True)
class PrmParams:
    """Parameter point (n, k, q) for the code of degree k on P^n(F_q)."""

    n: int
    k: int
    q: int

    def __post_init__(self):
        if self.n < 1 or self.k < 0 or self.q < 2:
            raise OutOfRange(f"need n >= 1, k >= 0, q >= 2; got {self}")

    @property
    def ell(self) -> int:
        """Degree of the dual-side code, n(q-1) - k."""
        return self.n * (self.q - 1) - self.k

    @property
    def N(self) -> int:
        return num_projective_points(self.q, self.n)

    def regime(self) -> str:
        if self.k == 0:
            return "span-one"
        if self.k <= self.n * (self.q - 1):
            return "proper"
        return "full-space"


@dataclass(frozen=True)
class DualDescription:
    """Shape of the dual code: degree ell, with the all-ones row adjoined
    exactly when k is a multiple of q - 1."""

    ell: int
    adjoin_ones: bool


def _require_proper(n: int, k: int, q: int) -> None:
    if n < 1 or q < 2 or not 1 <= k <= n * (q - 1):
        raise OutOfRange(f"need n >= 1, q >= 2, 1 <= k <= n(q-1); got n={n}, k={k}, q={q}")


def _comb0(a: int, b: int) -> int:
    # C(a, b) = 0 whenever b < 0 or a < b; in particular C(a, 0) = 1 for a >= 0.
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


def dim_sorensen(n: int, k: int, q: int) -> int:
    """Dimension of the degree-k code on P^n(F_q), 1 <= k <= n(q-1).

    Exact evaluation of the alternating double sum over residues
    t = k, k-(q-1), k-2(q-1), ... > 0.
    """
    _require_proper(n, k, q)
    total = 0
    for t in range(k, 0, -(q - 1)):
        for j in range(n + 2):
            sign = -1 if j & 1 else 1
            total += sign * math.comb(n + 1, j) * _comb0(t - j * q + n, t - j * q)
    return total


def dim_mr(n: int, k: int, q: int) -> int:
    """Same dimension via the alternative closed form C(n+k,k) - correction.

    For k < q the correction vanishes and the value is C(n+k, k).
    """
    _require_proper(n, k, q)
    total = math.comb(n + k, k)
    for j in range(2, n + 2):
        sign = -1 if j & 1 else 1
        inner = 0
        for i in range(j - 1):
            t = k + (i + 1) * (q - 1) - j * q
            inner += _comb0(t + n, t)
        total -= sign * math.comb(n + 1, j) * inner
    return total


def min_dist_formula(n: int, k: int, q: int) -> int:
    """Minimum distance (q-s)q^(n-r-1) where k-1 = r(q-1)+s, 0 <= s < q-1."""
    _require_proper(n, k, q)
    r, s = divmod(k - 1, q - 1)
    D = (q - s) * q ** (n - r - 1)
    if k < q:
        assert D == (q - k + 1) * q ** (n - 1)
    return D


def dual_description(n: int, k: int, q: int) -> DualDescription:
    """The dual of the degree-k code: degree ell = n(q-1)-k, with the
    all-ones vector adjoined iff k ≡ 0 (mod q-1)."""
    _require_proper(n, k, q)
    return DualDescription(ell=n * (q - 1) - k, adjoin_ones=k % (q - 1) == 0)


def classify_predicted(n: int, k: int, q: int) -> dict[str, bool]:
    """Closed-form self-dual / self-orthogonal / LCD classification.

    self_dual iff q and n are odd and 2k = n(q-1); self_orthogonal iff
    2k <= n(q-1) and 2k ≡ 0 (mod q-1); lcd iff k = n(q-1).
    """
    _require_proper(n, k, q)
    t = n * (q - 1)
    return {
        "self_dual": q % 2 == 1 and n % 2 == 1 and 2 * k == t,
        "self_orthogonal": 2 * k <= t and (2 * k) % (q - 1) == 0,
        "lcd": k == t,
    }


def hull_dim_cases(n: int, k: int, q: int) -> tuple[tuple[str, int], ...]:
    """Every closed-form hull-dimension case matching (n, k, q).

    Returns (label, value) pairs; empty when no closed form applies. The
    labels state the defining inequality of each case.
    """
    _require_proper(n, k, q)
    t = n * (q - 1)
    ell = t - k
    matches: list[tuple[str, int]] = []
    if 2 * k < q - 1:  # (a)
        matches.append(("q>2k+1", dim_sorensen(n, k, q) - 1))
    if 2 * k > 2 * t - (q - 1):  # (b); k = t gives C(n,0)-1 = 0, the LCD point
        matches.append(("q>2l+1", math.comb(n + ell, ell) - 1))
    if q - 1 < 2 * k < 2 * (q - 1):  # (c)
        matches.append(("q-1<2k<2(q-1)", dim_sorensen(n, k, q) - (2 * k + 1 - (q - 1))))
    if (n - 1) * (q - 1) < k and 2 * k < 2 * t - (q - 1):  # (d)
        matches.append(
            ("q-1<2l<2(q-1)", math.comb(n + ell, ell) - (2 * ell + 1 - (q - 1)))
        )
    if 2 * k <= t and (2 * k) % (q - 1) == 0:  # (e)
        matches.append(("self-orthogonal:hull=C", dim_sorensen(n, k, q)))
    if 2 * k >= t and (2 * k) % (q - 1) == 0 and k % (q - 1) != 0:  # (f)
        matches.append(("dual-self-orthogonal:hull=dual", dim_sorensen(n, ell, q)))
    return tuple(matches)


def hull_dim_predicted(n: int, k: int, q: int):
    """Closed-form hull dimension where one is known, else NO_CLOSED_FORM.

    Cases, with t = n(q-1) and ell = t - k (conditions stated with doubled
    inequalities so everything stays in integers):
      (a) 2k < q-1                       -> K - 1
      (b) 2k > 2t - (q-1)                -> C(n+ell, ell) - 1
      (c) q-1 < 2k < 2(q-1)              -> K - (2k+1-(q-1))
      (d) (n-1)(q-1) < k, 2k < 2t-(q-1)  -> C(n+ell, ell) - (2ell+1-(q-1))
      (e) 2k <= t, 2k ≡ 0 (mod q-1)      -> K            (self-orthogonal)
      (f) 2k >= t, 2k ≡ 0, k ≢ 0         -> dim of the degree-ell code

    Overlapping cases are asserted consistent rather than prioritized.
    """
    matches = hull_dim_cases(n, k, q)
    if not matches:
        return NO_CLOSED_FORM
    values = [v for _, v in matches]
    if any(v != values[0] for v in values):
        raise InternalInconsistency(
            f"overlapping hull cases disagree at n={n}, k={k}, q={q}: {matches}"
        )
    return values[0]


def hull_basis_predicted(n: int, k: int, q: int):
    """Monomial basis of the hull where one is known, else NO_CLOSED_FORM.

    For q > 2k+1: every degree-k monomial except x_n^k. For
    (q-1)/2 < k < q-1: every degree-k monomial except x_{n-1}^{k-a} x_n^a
    with q-1-k <= a <= k.
    """
    _require_proper(n, k, q)
    if 2 * k < q - 1:
        monos = monomials_of_degree(n, k)
        last = monos.pop()
        assert last == (0,) * n + (k,)
        return monos
    if q - 1 < 2 * k < 2 * (q - 1):
        excluded = set()
        for a in range(q - 1 - k, k + 1):
            m = [0] * (n + 1)
            m[n - 1] = k - a
            m[n] = a
            excluded.add(tuple(m))
        return [m for m in monomials_of_degree(n, k) if m not in excluded]
    return NO_CLOSED_FORM


def rsj_hull_dim(k: int, q: int) -> int:
    """Hull dimension over the projective plane, 1 <= k <= 2(q-1).

    C(k+1,2) + min(k, q-1-k) when 2k ≢ 0 (mod q-1); the whole code when
    2k ≡ 0. Degrees above q-1 reduce through the dual, whose hull is the
    same subspace; k = 2(q-1) is the LCD point.
    """
    if q < 2 or not 1 <= k <= 2 * (q - 1):
        raise OutOfRange(f"need 1 <= k <= 2(q-1); got k={k}, q={q}")
    if k == 2 * (q - 1):
        return 0
    if k > q - 1:
        k = 2 * (q - 1) - k
    if (2 * k) % (q - 1) == 0:
        return dim_sorensen(2, k, q)
    return math.comb(k + 1, 2) + min(k, q - 1 - k)


def lcd_witness(field: Field, n: int, k: int) -> np.ndarray:
    """Evaluation of x_0^k, a nonzero vector in both the code and its dual
    whenever 1 <= k < n(q-1)."""
    q = field.q
    if n < 1 or not 1 <= k < n * (q - 1):
        raise OutOfRange(f"witness needs 1 <= k < n(q-1); got n={n}, k={k}, q={q}")
    P = projective_points(field, n)
    return evaluate((k,) + (0,) * n, P)


class PrmCode(LinearCode):
    """A projective Reed-Muller code whose generator rows are labeled by
    the reduced basis monomials, in order."""

    def __init__(self, G: MatrixFq, n: int, k: int, monomials, label: str):
        super().__init__(G, label=label)
        self.n = n
        self.k = k
        self.monomials: tuple[Monomial, ...] = tuple(monomials)


def prm_code(field: Field, n: int, k: int) -> PrmCode:
    """The degree-k code on P^n(F_q).

    k = 0 gives the span of the all-ones vector; 1 <= k <= n(q-1) the
    proper codes; larger k the full space. The constructed rank is checked
    against the dimension formula.
    """
    if n < 1 or k < 0:
        raise OutOfRange(f"need n >= 1, k >= 0; got n={n}, k={k}")
    q = field.q
    P = projective_points(field, n)
    if k == 0:
        monos: list[Monomial] = [(0,) * (n + 1)]
        G = np.ones((1, P.N), dtype=np.int32)
    else:
        monos = reduced_basis_monomials(n, k, q)
        G = evaluate_rows(monos, P)
    try:
        C = PrmCode(MatrixFq(field, G), n, k, monos, label=f"PRM(n={n},k={k},q={q})")
    except DimensionMismatch as exc:
        raise InternalInconsistency(f"monomial evaluations are dependent: {exc}") from exc
    if k == 0:
        expected = 1
    elif k <= n * (q - 1):
        expected = dim_sorensen(n, k, q)
    else:
        expected = P.N
    if C.K != expected:
        raise InternalInconsistency(
            f"constructed rank {C.K} != formula dimension {expected} at n={n}, k={k}, q={q}"
        )
    return C


def arm_code(field: Field, n: int, k: int) -> LinearCode:
    """The affine code of order k on F_q^n: evaluations of all reduced
    monomials (every exponent <= q-1) of total degree <= k."""
    if n < 1 or k < 0:
        raise OutOfRange(f"need n >= 1, k >= 0; got n={n}, k={k}")
    q = field.q
    pts = affine_points(field, n)
    monos = [m for m in itertools.product(range(q), repeat=n) if sum(m) <= k]
    monos.sort(key=lambda m: (-sum(m), tuple(-a for a in m)))
    G = _evaluate_rows(field, monos, pts)
    return LinearCode(MatrixFq(field, G), label=f"ARM(n={n},k={k},q={q})")


def described_dual_code(field: Field, n: int, k: int) -> LinearCode:
    """The dual as the duality theorem names it: the degree-ell code, with
    the all-ones row adjoined when k ≡ 0 (mod q-1).

    ell = 0 collapses to the span of the all-ones vector.
    """
    q = field.q
    desc = dual_description(n, k, q)
    if desc.ell == 0:
        return prm_code(field, n, 0)
    base = prm_code(field, n, desc.ell)
    if not desc.adjoin_ones:
        return base
    rows = np.vstack([np.ones((1, base.N), dtype=np.int32), base.G.a])
    return code_from_rows(field, rows, label=f"span(1, PRM(n={n},k={desc.ell},q={q}))")


class ClassificationReport:
    """Predicted vs constructed classification at one parameter point."""

    def __init__(
        self,
        params: PrmParams,
        N: int,
        K: int,
        D_formula: int,
        predicted: dict,
        constructed: dict,
        agree: bool,
        hull_dim_source: str,
    ):
        self.params = params
        self.N = N
        self.K = K
        self.D_formula = D_formula
        self.predicted = predicted
        self.constructed = constructed
        self.agree = agree
        self.hull_dim_source = hull_dim_source

    def to_json(self) -> dict:
        pred = dict(self.predicted)
        if pred["hull_dim"] is NO_CLOSED_FORM:
            pred["hull_dim"] = "no-closed-form"
        return {
            "n": self.params.n,
            "k": self.params.k,
            "q": self.params.q,
            "N": self.N,
            "K": self.K,
            "D_formula": self.D_formula,
            "predicted": pred,
            "constructed": dict(self.constructed),
            "agree": self.agree,
            "hull_dim_source": self.hull_dim_source,
        }


def classification_report(field: Field, n: int, k: int) -> ClassificationReport:
    """Build the code, measure its predicates and hull, and compare with
    every closed-form prediction available at (n, k, q)."""
    q = field.q
    _require_proper(n, k, q)
    pred = dict(classify_predicted(n, k, q))
    pred["hull_dim"] = hull_dim_predicted(n, k, q)
    C = prm_code(field, n, k)
    rep = hull(C)
    cons = {
        "self_dual": is_self_dual(C),
        "self_orthogonal": is_self_orthogonal(C),
        "lcd": is_lcd(C),
        "hull_dim": rep.hull_dim,
    }
    agree = all(pred[key] == cons[key] for key in ("self_dual", "self_orthogonal", "lcd"))
    closed = pred["hull_dim"] is not NO_CLOSED_FORM
    if closed:
        agree = agree and pred["hull_dim"] == cons["hull_dim"]
    return ClassificationReport(
        PrmParams(n, k, q),
        C.N,
        C.K,
        min_dist_formula(n, k, q),
        pred,
        cons,
        agree,
        "closed-form" if closed else "constructive",
    )

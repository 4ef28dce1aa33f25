"""Generic linear-code operations: dual, hull, Gram matrix, predicates.

Everything here is independent of how a code was constructed; the
projective Reed-Muller layer builds on these and cross-checks its
closed-form predictions against them.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, FieldMismatch, InternalInconsistency
from .exactla import (
    MatrixFq,
    SubspaceBasis,
    intersect_rowspaces,
    mat_mul,
    nullspace,
    rank,
    transpose,
)
from .field import Field


class LinearCode:
    """A linear [N, K] code presented by a full-rank generator matrix.

    The generator is stored exactly as given (no auto-canonicalization)
    so that row i keeps its meaning — for Reed-Muller codes, the i-th
    basis monomial. Canonical forms appear only inside equality checks.
    """

    def __init__(self, G: MatrixFq, label: str = ""):
        r = rank(G)
        if r != G.rows:
            raise DimensionMismatch(
                f"generator rows are dependent: rank {r} < rows {G.rows}"
            )
        self.G = G
        self.label = label
        self._canonical: SubspaceBasis | None = None
        self._gram: MatrixFq | None = None
        self._gram_rank: int | None = None
        self._dual: "LinearCode | None" = None

    @property
    def field(self) -> Field:
        return self.G.field

    @property
    def N(self) -> int:
        return self.G.cols

    @property
    def K(self) -> int:
        return self.G.rows

    def canonical(self) -> SubspaceBasis:
        if self._canonical is None:
            self._canonical = SubspaceBasis.from_matrix(self.G)
        return self._canonical

    def gram(self) -> MatrixFq:
        """The K x K matrix G G^T."""
        if self._gram is None:
            self._gram = mat_mul(self.G, transpose(self.G))
        return self._gram

    def gram_rank(self) -> int:
        if self._gram_rank is None:
            self._gram_rank = rank(self.gram())
        return self._gram_rank

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        return f"LinearCode(GF({self.field.q}), [{self.N},{self.K}]{tag})"


class HullReport:
    """Hull of a code computed two independent ways.

    hull_dim comes from the explicit subspace intersection; gram_rank
    from row-reducing G G^T. The relation hull_dim = K - gram_rank is
    asserted at construction.
    """

    def __init__(self, hull_basis: SubspaceBasis, hull_dim: int, gram_rank: int):
        self.hull_basis = hull_basis
        self.hull_dim = hull_dim
        self.gram_rank = gram_rank

    def to_json(self, basis_monomials=None) -> dict:
        out = {"hull_dim": self.hull_dim, "gram_rank": self.gram_rank}
        if basis_monomials is not None:
            out["basis_monomials"] = [",".join(str(a) for a in m) for m in basis_monomials]
        return out


def dual(C: LinearCode) -> LinearCode:
    """The dual code, generated by a canonical basis of the right kernel.

    The result is cached on the code, so repeated calls (e.g. by hull
    computation and an explicit duality check) share one kernel solve.
    """
    if C._dual is not None:
        return C._dual
    ns = nullspace(C.G)
    D = LinearCode(ns.matrix, label=f"dual({C.label})" if C.label else "dual")
    # The kernel basis comes out already in RREF, so the canonical form
    # is free.
    D._canonical = ns
    prod = mat_mul(C.G, transpose(D.G))
    assert not prod.a.any(), "dual rows must be orthogonal to generator rows"
    assert D.K == C.N - C.K
    C._dual = D
    return D


def hull(C: LinearCode) -> HullReport:
    """Hull = C ∩ C^⊥, cross-checked against K - rank(G G^T).

    Raises:
        InternalInconsistency: if the two computations disagree (a
        linear-algebra bug, not a property of the input).
    """
    D = dual(C)
    basis = intersect_rowspaces(C.G, D.G)
    gr = C.gram_rank()
    if basis.dim != C.K - gr:
        raise InternalInconsistency(
            f"hull dim {basis.dim} != K - rank(GG^T) = {C.K} - {gr}"
        )
    return HullReport(basis, basis.dim, gr)


def is_self_orthogonal(C: LinearCode) -> bool:
    """C ⊆ C^⊥, equivalently G G^T = 0."""
    return not C.gram().a.any()


def is_lcd(C: LinearCode) -> bool:
    """Hull is the zero space, equivalently G G^T invertible."""
    return C.gram_rank() == C.K


def is_self_dual(C: LinearCode) -> bool:
    """C = C^⊥: self-orthogonal with K exactly half the length."""
    return is_self_orthogonal(C) and 2 * C.K == C.N


def contains_vector(C: LinearCode, v) -> bool:
    """True iff v lies in the row space of G.

    Decided by a rank comparison: v is reduced by the pivot rows of the
    canonical basis, and membership means the residual vanishes (adding
    v does not raise the rank).
    """
    v = np.asarray(v, dtype=np.int32).reshape(1, -1)
    if v.shape[1] != C.N:
        raise DimensionMismatch(f"vector length {v.shape[1]}, code length {C.N}")
    return C.canonical().contains_rows(v)


def equal_codes(C1: LinearCode, C2: LinearCode) -> bool:
    """Row-space equality via canonical RREF comparison."""
    if C1.field != C2.field:
        raise FieldMismatch(f"{C1.field} vs {C2.field}")
    if C1.N != C2.N:
        raise DimensionMismatch(f"lengths {C1.N} vs {C2.N}")
    return C1.canonical() == C2.canonical()


def code_from_rows(field: Field, rows, label: str = "") -> LinearCode:
    """Build a code from possibly dependent spanning rows.

    The rows are canonicalized first, so the resulting generator is the
    RREF basis of their span.
    """
    M = MatrixFq(field, np.asarray(rows, dtype=np.int32))
    basis = SubspaceBasis.from_matrix(M)
    C = LinearCode(basis.matrix, label=label)
    C._canonical = basis
    return C

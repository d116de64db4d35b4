"""Colimits of towers Z^r -> Z^r -> ... along a fixed integer matrix.

The colimit of an injective T is realized concretely as the subgroup
G = union of T^(-n) Z^r inside Q^r.  Three facts drive the algorithms:

* Membership is decidable with a proven stage bound.  Applying T never
  increases the denominator of a vector, and if the p-denominator of a
  candidate stalls for rank-many steps, the stalled part sits in the
  part of F_p^r where T is invertible and the denominator never clears.
  So members of G shed at least one power of p every rank steps, and a
  candidate with denominator d is settled by stage rank * max_p v_p(d).

* For commuting T and T', containment of colimits reduces to finitely
  many membership tests: G is contained in G' exactly when every column
  of T^(-1) lies in G', because T^(-1) then maps G' into itself and
  induction carries T^(-n) Z^r inside.  This makes equality definitive
  in both directions, with an explicit witness vector on failure.

* rank(G / pG) equals the stable rank of T mod p, an honest isomorphism
  invariant used to separate colimits when no commuting comparison is
  available.

Torsion towers are finite, so their colimit is the eventual image with
the map acting bijectively; mixed towers reduce to a block-diagonal
power of the map when some power kills the free-to-torsion mixing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AtomClassExceeded, CapExceeded, NonCommuting
from .fgab import FgAbGroup, LocalizedForm
from .intfactor import factorint, radical
from .linalg import IntMatrix, RatMatrix, hnf, snf_diagonal, stable_rank_mod_p

MEMBERSHIP_CAP_FACTOR = 10


class ColimitGroup:
    """colim(Z^r, T) for injective T, as the union of T^(-n) Z^r in Q^r.

    The trivial group is matrix=None with rank zero.
    """

    def __init__(self, matrix: IntMatrix | None, name: str | None = None):
        if matrix is None:
            self.matrix = None
            self.rank = 0
            self.det = 1
        else:
            if matrix.nrows != matrix.ncols:
                raise ValueError("tower matrix must be square")
            self.matrix = matrix
            self.rank = matrix.nrows
            self.det = matrix.det()
            if self.det == 0:
                raise ValueError("tower matrix must be injective; reduce with free_colimit")
        self.name = name

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"ColimitGroup(rank={self.rank}, det={self.det}{label})"

    def membership_stage(self, vec: Sequence) -> int | None:
        """Least n with T^n vec integral, or None when vec is not in the
        group.  Scans past the proven bound as a self-check; a witness in
        the overscan region means the bound argument failed."""
        v = [Fraction(c) for c in vec]
        if len(v) != self.rank:
            raise ValueError("vector length does not match the rank")
        den = math.lcm(*(c.denominator for c in v)) if v else 1
        if den == 1:
            return 0
        det_primes = set(factorint(abs(self.det)))
        den_factors = factorint(den)
        if any(p not in det_primes for p in den_factors):
            return None
        # r * Omega(den): the chain of partial preimages sits inside a
        # group of order den**r and grows strictly until the witness.
        bound = self.rank * sum(den_factors.values())
        cap = MEMBERSHIP_CAP_FACTOR * bound
        current = v
        for n in range(cap + 1):
            if all(c.denominator == 1 for c in current):
                if n > bound:
                    raise CapExceeded(
                        f"membership witness at stage {n} beyond proven bound {bound}"
                    )
                return n
            current = list(self.matrix.apply(current))
        return None

    def contains(self, vec: Sequence) -> bool:
        return self.membership_stage(vec) is not None

    def signature(self) -> "InvariantSignature":
        return InvariantSignature.of(self)


@dataclass(frozen=True)
class InvariantSignature:
    """Isomorphism invariants of a free colimit: the rank and the
    dimension of G/pG for each prime dividing the tower determinant."""

    rank: int
    mod_p_ranks: tuple[tuple[int, int], ...]

    @staticmethod
    def of(G: ColimitGroup) -> "InvariantSignature":
        pairs = []
        for p in sorted(factorint(abs(G.det))):
            pairs.append((p, stable_rank_mod_p(G.matrix, p)))
        return InvariantSignature(G.rank, tuple(pairs))

    def matches(self, other: "InvariantSignature") -> bool:
        if self.rank != other.rank:
            return False
        a, b = dict(self.mod_p_ranks), dict(other.mod_p_ranks)
        for p in set(a) | set(b):
            if a.get(p, self.rank) != b.get(p, other.rank):
                return False
        return True


def equal_commuting(G: ColimitGroup, H: ColimitGroup) -> tuple[bool, tuple | None]:
    """Decide G == H as subgroups of Q^r when the tower matrices commute.

    Returns (True, None) or (False, witness) where the witness vector
    lies in exactly one of the two groups.  Raises NonCommuting when the
    matrices do not commute, since the reduction to finitely many
    membership tests is only proven in the commuting case.
    """
    if G.rank != H.rank:
        return False, None
    if G.rank == 0:
        return True, None
    A, B = G.matrix, H.matrix
    if A @ B != B @ A:
        raise NonCommuting("tower matrices do not commute; only invariants can be compared")
    for M, target in ((A, H), (B, G)):
        inv = M.to_rat().inverse()
        for j in range(M.ncols):
            col = inv.column(j)
            if not target.contains(col):
                return False, col
    return True, None


def canonical_form(G: ColimitGroup) -> LocalizedForm:
    """Closed form of the colimit in the supported atom classes.

    Covers rank one, unimodular towers, and diagonal towers; anything
    else raises AtomClassExceeded so callers can fall back to reporting
    the tower itself.
    """
    if G.rank == 0:
        return LocalizedForm.zero()
    if G.rank == 1:
        m = abs(G.det)
        return LocalizedForm.free(1) if m == 1 else LocalizedForm.localized(radical(m))
    if abs(G.det) == 1:
        return LocalizedForm.free(G.rank)
    if G.matrix.is_diagonal():
        out = LocalizedForm.zero()
        for i in range(G.rank):
            m = abs(G.matrix.rows[i][i])
            out = out + (LocalizedForm.free(1) if m == 1 else LocalizedForm.localized(radical(m)))
        return out
    raise AtomClassExceeded(
        f"rank {G.rank} tower with determinant {G.det} has no supported closed form"
    )


def canonical_form_rank1(G: ColimitGroup) -> LocalizedForm:
    """Closed form for rank-one towers only; raises on higher rank."""
    if G.rank != 1:
        raise ValueError("canonical_form_rank1 needs a rank-one tower")
    return canonical_form(G)


def free_colimit(F: IntMatrix | None, name: str | None = None) -> ColimitGroup:
    """colim(Z^f, F) for a possibly non-injective F, restricted to the
    eventual image where the map becomes injective.

    The tower Z^f -> Z^f is cofinal with F^f Z^f -> F^f Z^f, and on that
    sublattice F acts injectively because the rank of F^k has stabilized.
    """
    if F is None:
        return ColimitGroup(None, name)
    f = F.nrows
    if F.det() != 0:
        return ColimitGroup(F, name)
    L = F.pow(f)
    if L.is_zero():
        return ColimitGroup(None, name)
    basis = hnf(L)  # f x r_s, r_s = stable rank of F
    image = F @ basis
    T = _solve_lattice(basis.to_rat(), image)
    if not T.is_integral():
        raise ValueError("map does not preserve its eventual image lattice")
    return ColimitGroup(T.to_int(), name)


def _solve_lattice(B: RatMatrix, image: IntMatrix) -> RatMatrix:
    """X with B X = image, for B of full column rank."""
    # square up: pick rank-many independent rows of B
    f, rs = B.nrows, B.ncols
    rows_idx: list[int] = []
    probe: list[list[Fraction]] = []
    for i in range(f):
        trial = probe + [[B.rows[i][j] for j in range(rs)]]
        if RatMatrix(trial).rank() == len(trial):
            probe = trial
            rows_idx.append(i)
        if len(rows_idx) == rs:
            break
    square = RatMatrix(probe)
    rhs = RatMatrix([[Fraction(image.rows[i][j]) for j in range(image.ncols)] for i in rows_idx])
    X = square.inverse() @ rhs
    # verify against the rows not used for the solve
    check = B @ X
    for i in range(f):
        for j in range(image.ncols):
            if check.rows[i][j] != image.rows[i][j]:
                raise ValueError("inconsistent lattice solve")
    return X


def torsion_colimit(group: FgAbGroup, relations: IntMatrix, F: IntMatrix) -> FgAbGroup:
    """colim of a finite group along an endomorphism: the eventual image.

    The group is presented as Z^n / (columns of relations); F is a lift
    of the endomorphism with F * relations inside the relation lattice.
    Once the descending chain F^k Z^n + R stabilizes, the map permutes
    the stabilized subgroup bijectively, so the colimit is that subgroup.
    """
    if group.free_rank != 0:
        raise ValueError("torsion_colimit expects a finite group")
    n = F.nrows
    L = IntMatrix.identity(n)
    for _ in range(64):
        nxt = hnf(_stack_columns(F @ L, relations))
        if nxt == L:
            break
        L = nxt
    else:
        raise CapExceeded("image chain of a finite group failed to stabilize")
    # present L / relations: the relation lattice pulled through the basis
    M = _solve_lattice(L.to_rat(), relations)
    if not M.is_integral():
        raise ValueError("relation lattice escaped the stabilized image")
    invs = [d for d in snf_diagonal(M.to_int()) if d > 1]
    return FgAbGroup(0, tuple(invs))


def _stack_columns(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    return IntMatrix.from_columns(A.columns() + B.columns())

"""Number fields, their elements, and fractional ideal arithmetic.

A field is Q[x]/(f) for a monic integer irreducible f.  Elements carry
coordinates over the power basis 1, theta, ..., theta^(d-1).  For degree
at most 2 the maximal order is computed in closed form; for higher degree
the working order is Z[theta] and any prime whose factorization would be
distorted by the index (detected with the Dedekind criterion) raises
IndexObstruction rather than returning wrong data.

Fractional ideals are full-rank lattices inside the field, stored as an
integer matrix in column Hermite form over the integral basis together
with a positive denominator.  That representation is canonical, so ideal
equality is literal equality of the pair.

Valuations use anti-uniformizers: u in P^-1 \\ O_K has v_P(u) = -1 and
v_Q(u) >= 0 elsewhere over p, so v_P(y) for integral y is the number of
times y can absorb u and stay integral.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import IndexObstruction, InternalCheckError
from .intfactor import factorint
from .linalg import IntMatrix, RatMatrix, char_poly, hnf
from .qpoly import Poly, factor_mod_p, is_irreducible_over_q
from .rootcount import (  # noqa: F401  (module surface: root location lives here too)
    real_root_count,
    real_roots_in_interval,
    roots_in_unit_disk,
    unit_circle_root_count,
)


def _squarefree_decompose_int(n: int) -> tuple[int, int]:
    """n = u^2 * m with m squarefree (sign goes to m); returns (u, m)."""
    if n == 0:
        raise ValueError("zero has no squarefree decomposition")
    u = 1
    m = n
    for p, e in factorint(abs(n)).items():
        if e >= 2:
            u *= p ** (e // 2)
            m //= p ** (2 * (e // 2))
    return u, m


class NumberField:
    """Q[x]/(min_poly) with a fixed integral (or working) basis."""

    def __init__(self, min_poly: Poly, gen_symbol: str = "a", check: bool = True):
        if not min_poly.is_integer() or min_poly.coeffs[0] != 1:
            raise ValueError("defining polynomial must be monic with integer coefficients")
        if min_poly.degree < 1:
            raise ValueError("defining polynomial must be nonconstant")
        if check and not is_irreducible_over_q(min_poly):
            raise ValueError(f"{min_poly.pretty()} is reducible over Q")
        self.min_poly = min_poly
        self.degree = min_poly.degree
        self.gen_symbol = gen_symbol
        self._theta_powers = self._build_theta_powers()
        self.basis_matrix = self._build_integral_basis()
        self.basis_matrix_inv = self.basis_matrix.inverse()
        self.discriminant = self._compute_discriminant()
        self._prime_cache: dict[int, list["PrimeIdeal"]] = {}

    # representation helpers -------------------------------------------------
    def _build_theta_powers(self) -> list[tuple[Fraction, ...]]:
        d = self.degree
        powers: list[list[Fraction]] = []
        current = [Fraction(1)] + [Fraction(0)] * (d - 1)
        powers.append(current[:])
        # reduction of theta^d via the minimal polynomial
        red = [-c for c in reversed(self.min_poly.coeffs[1:])]
        for _ in range(2 * d - 2):
            shifted = [Fraction(0)] + current[:]
            overflow = shifted.pop()
            current = [c + overflow * r for c, r in zip(shifted, red)]
            powers.append(current[:])
        return [tuple(p) for p in powers]

    def _build_integral_basis(self) -> RatMatrix:
        d = self.degree
        if d != 2:
            return RatMatrix.identity(d)
        b = int(self.min_poly.coeffs[1])
        disc_f = b * b - 4 * int(self.min_poly.coeffs[2])
        u, m = _squarefree_decompose_int(disc_f)
        if m % 4 == 1:
            omega = (Fraction(u + b, 2 * u), Fraction(1, u))
        else:
            omega = (Fraction(b, u), Fraction(2, u))
        W = RatMatrix.from_columns([(1, 0), omega])
        index = 1 / abs(W.det())
        if index.denominator != 1:
            raise InternalCheckError("quadratic integral basis has non-integer index")
        return W

    def _compute_discriminant(self) -> int:
        if self.degree == 1:
            return 1
        if self.degree == 2:
            b = int(self.min_poly.coeffs[1])
            disc_f = b * b - 4 * int(self.min_poly.coeffs[2])
            _, m = _squarefree_decompose_int(disc_f)
            return m if m % 4 == 1 else 4 * m
        # discriminant of the working order Z[theta], via the trace form
        d = self.degree
        theta_pows = [self.one()]
        for _ in range(2 * d - 2):
            theta_pows.append(theta_pows[-1] * self.gen())
        traces = [tp.trace() for tp in theta_pows]
        trace_form = [[traces[i + j] for j in range(d)] for i in range(d)]
        disc = RatMatrix(trace_form).det()
        if disc.denominator != 1:
            raise InternalCheckError("trace form discriminant is not an integer")
        return int(disc)

    @property
    def maximal_order_known(self) -> bool:
        return self.degree <= 2

    # constructors -----------------------------------------------------------
    def element(self, coords: Sequence) -> "NfElement":
        cs = [Fraction(c) for c in coords]
        if len(cs) != self.degree:
            raise ValueError("coordinate length mismatch")
        return NfElement(self, tuple(cs))

    def from_rational(self, q) -> "NfElement":
        return self.element([Fraction(q)] + [Fraction(0)] * (self.degree - 1))

    def from_poly(self, p: Poly) -> "NfElement":
        """Evaluate a rational polynomial at the field generator."""
        acc = self.zero()
        for c in p.coeffs:
            acc = acc * self.gen() + self.from_rational(c)
        return acc

    def zero(self) -> "NfElement":
        return self.from_rational(0)

    def one(self) -> "NfElement":
        return self.from_rational(1)

    def gen(self) -> "NfElement":
        if self.degree == 1:
            return self.from_rational(-self.min_poly.coeffs[1])
        return self.element([0, 1] + [0] * (self.degree - 2))

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self) -> int:
        return hash(self.min_poly)

    def __repr__(self) -> str:
        return f"NumberField({self.min_poly.pretty()})"

    # multiplication ---------------------------------------------------------
    def _mul_coords(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
        d = self.degree
        out = [Fraction(0)] * d
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj == 0:
                    continue
                coeff = ai * bj
                for k, tk in enumerate(self._theta_powers[i + j]):
                    if tk:
                        out[k] += coeff * tk
        return tuple(out)


class NfElement:
    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple[Fraction, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("NfElement is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NfElement)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coords))

    def __repr__(self) -> str:
        return f"<{self.pretty()}>"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def __add__(self, other: "NfElement") -> "NfElement":
        return NfElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "NfElement") -> "NfElement":
        return NfElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "NfElement":
        return NfElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other: "NfElement") -> "NfElement":
        return NfElement(self.field, self.field._mul_coords(self.coords, other.coords))

    def scale(self, q) -> "NfElement":
        q = Fraction(q)
        return NfElement(self.field, tuple(q * a for a in self.coords))

    def inverse(self) -> "NfElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # extended euclid of the coordinate polynomial against min_poly
        g = Poly.from_ascending(self.coords)
        f = self.field.min_poly
        r0, r1 = f, g
        s0, s1 = Poly.zero(), Poly.const(1)
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        if r0.degree != 0:
            raise InternalCheckError("element shares a factor with the minimal polynomial")
        inv_poly = s0.scale(1 / r0.coeffs[0])
        return self.field.from_poly(inv_poly)

    def __truediv__(self, other: "NfElement") -> "NfElement":
        return self * other.inverse()

    def pow(self, e: int) -> "NfElement":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = self.field.one()
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # linear data ------------------------------------------------------------
    def mult_matrix_power_basis(self) -> RatMatrix:
        cols = []
        d = self.field.degree
        for j in range(d):
            basis_vec = tuple(Fraction(int(i == j)) for i in range(d))
            cols.append(self.field._mul_coords(self.coords, basis_vec))
        return RatMatrix.from_columns(cols)

    def mult_matrix_integral(self) -> RatMatrix:
        W = self.field.basis_matrix
        return self.field.basis_matrix_inv @ self.mult_matrix_power_basis() @ W

    def norm(self) -> Fraction:
        return self.mult_matrix_power_basis().det()

    def trace(self) -> Fraction:
        M = self.mult_matrix_power_basis()
        return sum(M.rows[i][i] for i in range(M.nrows))

    def char_poly_over_q(self) -> Poly:
        return Poly(char_poly(self.mult_matrix_power_basis()))

    def min_poly_over_q(self) -> Poly:
        cp = self.char_poly_over_q()
        return cp.squarefree_part() if cp.gcd(cp.derivative()).degree > 0 else cp

    def generates_field(self) -> bool:
        return self.min_poly_over_q().degree == self.field.degree

    def integral_coords(self) -> tuple[Fraction, ...]:
        return self.field.basis_matrix_inv.apply(self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.integral_coords())

    def denominator(self) -> int:
        """Least positive integer m with m * self in the working order."""
        return math.lcm(*(c.denominator for c in self.integral_coords()))

    def pretty(self) -> str:
        sym = self.field.gen_symbol
        parts = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            if i == 0:
                body = str(abs(c))
            else:
                xs = sym if i == 1 else f"{sym}^{i}"
                body = xs if abs(c) == 1 else f"{abs(c)}*{xs}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


class FractionalIdeal:
    """Full lattice num/den over the integral basis, num in column HNF."""

    def __init__(self, field: NumberField, num: IntMatrix, den: int):
        if den <= 0:
            raise ValueError("denominator must be positive")
        if num.nrows != field.degree:
            raise ValueError("ideal columns must live in the field")
        H = hnf(num)
        if H.ncols != field.degree:
            raise ValueError("ideal lattice must have full rank")
        g = math.gcd(den, *(x for row in H.rows for x in row))
        self.field = field
        self.num = IntMatrix([[x // g for x in row] for row in H.rows])
        self.den = den // g
        self._inv_cache: RatMatrix | None = None

    @staticmethod
    def ring_of_integers(field: NumberField) -> "FractionalIdeal":
        return FractionalIdeal(field, IntMatrix.identity(field.degree), 1)

    @staticmethod
    def from_elements(field: NumberField, gens: Sequence[NfElement]) -> "FractionalIdeal":
        """The O_K-module generated by the given nonzero elements."""
        cols = []
        coord_sets = []
        for g in gens:
            if g.is_zero():
                continue
            for j in range(field.degree):
                basis_elt = field.element(field.basis_matrix.column(j))
                coord_sets.append((g * basis_elt).integral_coords())
        if not coord_sets:
            raise ValueError("need at least one nonzero generator")
        den = math.lcm(*(c.denominator for coords in coord_sets for c in coords))
        for coords in coord_sets:
            cols.append([int(c * den) for c in coords])
        return FractionalIdeal(field, IntMatrix.from_columns(cols), den)

    @staticmethod
    def principal(field: NumberField, gen: NfElement) -> "FractionalIdeal":
        return FractionalIdeal.from_elements(field, [gen])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FractionalIdeal)
            and self.field == other.field
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.field, self.num, self.den))

    def __repr__(self) -> str:
        return f"FractionalIdeal(num={self.num!r}, den={self.den})"

    def basis_elements(self) -> list[NfElement]:
        """Lattice basis as field elements."""
        out = []
        W = self.field.basis_matrix
        for j in range(self.num.ncols):
            integral = [Fraction(x, self.den) for x in self.num.column(j)]
            out.append(self.field.element(W.apply(integral)))
        return out

    def contains(self, x: NfElement) -> bool:
        if self._inv_cache is None:
            self._inv_cache = self.num.to_rat().inverse()
        target = [c * self.den for c in x.integral_coords()]
        sol = self._inv_cache.apply(target)
        return all(c.denominator == 1 for c in sol)

    def __mul__(self, other: "FractionalIdeal") -> "FractionalIdeal":
        if self.field != other.field:
            raise ValueError("ideals over different fields")
        a_elts = self.basis_elements()
        b_elts = other.basis_elements()
        products = [x * y for x in a_elts for y in b_elts]
        den = math.lcm(*(c.denominator for p in products for c in p.integral_coords()))
        cols = [[int(c * den) for c in p.integral_coords()] for p in products]
        return FractionalIdeal(self.field, IntMatrix.from_columns(cols), den)

    def pow(self, e: int) -> "FractionalIdeal":
        if e < 0:
            raise ValueError("negative ideal powers only exist for prime ideals here")
        out = FractionalIdeal.ring_of_integers(self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, q) -> "FractionalIdeal":
        q = Fraction(q)
        if q <= 0:
            raise ValueError("scale by a positive rational")
        num = self.num.scale(q.numerator)
        return FractionalIdeal(self.field, num, self.den * q.denominator)

    def norm(self) -> Fraction:
        d = self.field.degree
        return abs(Fraction(self.num.det(), self.den**d))


def ideal_index(I: FractionalIdeal, J: FractionalIdeal) -> Fraction:
    """Generalized index [I : J] = N(J) / N(I), a positive rational.

    When J is contained in I this is the honest subgroup index.
    """
    if I.field != J.field:
        raise ValueError("ideals over different fields")
    return J.norm() / I.norm()


class PrimeIdeal:
    """Prime over p with two-element form (p, g(w)), w the basis generator."""

    def __init__(
        self,
        field: NumberField,
        p: int,
        second_gen: NfElement,
        e: int,
        f: int,
        gen_poly_mod_p: tuple[int, ...],
    ):
        self.field = field
        self.p = p
        self.second_gen = second_gen
        self.e = e
        self.f = f
        self.gen_poly_mod_p = gen_poly_mod_p
        self._ideal: FractionalIdeal | None = None
        self._inverse: FractionalIdeal | None = None
        self._anti_uniformizer: NfElement | None = None
        self._power_cache: dict[int, FractionalIdeal] = {}

    def norm(self) -> int:
        return self.p**self.f

    def ideal(self) -> FractionalIdeal:
        if self._ideal is None:
            self._ideal = FractionalIdeal.from_elements(
                self.field, [self.field.from_rational(self.p), self.second_gen]
            )
        return self._ideal

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PrimeIdeal)
            and self.field == other.field
            and self.p == other.p
            and self.gen_poly_mod_p == other.gen_poly_mod_p
        )

    def __hash__(self) -> int:
        return hash((self.field, self.p, self.gen_poly_mod_p))

    def __repr__(self) -> str:
        return f"PrimeIdeal(p={self.p}, g={self.second_gen.pretty()}, e={self.e}, f={self.f})"

    def inverse_ideal(self) -> FractionalIdeal:
        """P^-1 = p^-1 * P^(e-1) * prod of the other primes over p (to their e)."""
        if self._inverse is None:
            acc = self.ideal().pow(self.e - 1)
            for q in factor_rational_prime(self.field, self.p):
                if q != self:
                    acc = acc * q.ideal().pow(q.e)
            inv = FractionalIdeal(acc.field, acc.num, acc.den * self.p)
            check = inv * self.ideal()
            if check != FractionalIdeal.ring_of_integers(self.field):
                raise InternalCheckError("prime inverse failed P * P^-1 = O")
            self._inverse = inv
        return self._inverse

    def anti_uniformizer(self) -> NfElement:
        """u with v_P(u) = -1 and v_Q(u) >= 0 for the other primes over p."""
        if self._anti_uniformizer is None:
            for u in self.inverse_ideal().basis_elements():
                if not u.is_integral():
                    self._anti_uniformizer = u
                    break
            else:
                raise InternalCheckError("P^-1 has no non-integral basis vector")
        return self._anti_uniformizer

    def power(self, e: int) -> FractionalIdeal:
        """P^e for any integer e, negative powers via the inverse."""
        if e not in self._power_cache:
            if e >= 0:
                self._power_cache[e] = self.ideal().pow(e)
            else:
                self._power_cache[e] = self.inverse_ideal().pow(-e)
        return self._power_cache[e]


def _dedekind_index_free(field: NumberField, p: int) -> bool:
    """Dedekind criterion: True when p does not divide [O_K : Z[theta]]."""
    fpoly = field.min_poly
    factors = factor_mod_p(fpoly.int_coeffs(), p)
    g_lift = Poly.const(1)
    h_lift = Poly.const(1)
    for coeffs_asc, mult in factors:
        irr = Poly(list(reversed([c % p for c in coeffs_asc])))
        g_lift = g_lift * irr
        for _ in range(mult - 1):
            h_lift = h_lift * irr
    diff = g_lift * h_lift - fpoly
    F = diff.scale(Fraction(1, p))
    if not F.is_integer():
        raise InternalCheckError("Dedekind lift difference not divisible by p")
    cur = _gcd_mod_p(F.int_coeffs(), g_lift.int_coeffs(), p)
    cur = _gcd_mod_p(tuple(reversed(cur)), h_lift.int_coeffs(), p)
    return len(cur) == 1


def _gcd_mod_p(a_desc, b_desc, p):
    """gcd over F_p, returns ascending coefficients."""
    from .qpoly import _pgcd, _trim

    fa = _trim([c % p for c in reversed(list(a_desc))])
    fb = _trim([c % p for c in reversed(list(b_desc))])
    if not fa:
        return tuple(fb) if fb else (0,)
    if not fb:
        return tuple(fa)
    return tuple(_pgcd(fa, fb, p))


def factor_rational_prime(field: NumberField, p: int) -> list[PrimeIdeal]:
    """The primes of the field above p, with ramification and residue data.

    Sorted deterministically by the reduced generator polynomial.  For
    degree >= 3 a prime dividing the index of Z[theta] raises
    IndexObstruction since Kummer-Dedekind does not apply there.
    """
    if p in field._prime_cache:
        return field._prime_cache[p]
    from .intfactor import is_prime

    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    d = field.degree
    if d == 1:
        out = [
            PrimeIdeal(field, p, field.from_rational(p), 1, 1, (0, 1))
        ]
    else:
        if d == 2:
            # factor the minimal polynomial of the basis generator omega;
            # Z[omega] is the full ring of integers, so no index issues
            omega = field.element(field.basis_matrix.column(1))
            work_poly = Poly(char_poly(omega.mult_matrix_power_basis()))
            base = omega
        else:
            if not _dedekind_index_free(field, p):
                raise IndexObstruction(
                    f"p = {p} divides the index of the working order Z[theta]"
                )
            work_poly = field.min_poly
            base = field.gen()
        out = []
        for coeffs_asc, mult in factor_mod_p(work_poly.int_coeffs(), p):
            lift = Poly(list(reversed([c % p for c in coeffs_asc])))
            second = _eval_at(lift, base, field)
            out.append(PrimeIdeal(field, p, second, mult, len(coeffs_asc) - 1, coeffs_asc))
    if sum(q.e * q.f for q in out) != d:
        raise InternalCheckError("sum of e*f over p does not equal the degree")
    field._prime_cache[p] = out
    return out


def _eval_at(poly: Poly, base: NfElement, field: NumberField) -> NfElement:
    acc = field.zero()
    for c in poly.coeffs:
        acc = acc * base + field.from_rational(c)
    return acc


def valuation(x: NfElement, P: PrimeIdeal) -> int:
    """v_P(x) for nonzero x, via the anti-uniformizer absorption count."""
    if x.is_zero():
        raise ValueError("valuation of zero is infinite")
    m = x.denominator()
    y = x.scale(m)
    vp_m = 0
    mm = m
    while mm % P.p == 0:
        mm //= P.p
        vp_m += 1
    u = P.anti_uniformizer()
    count = 0
    z = y * u
    while z.is_integral():
        count += 1
        z = z * u
    return count - P.e * vp_m


def element_valuations(x: NfElement) -> dict[PrimeIdeal, int]:
    """All primes where x has nonzero valuation (x nonzero)."""
    if x.is_zero():
        raise ValueError("zero has no valuation data")
    m = x.denominator()
    y = x.scale(m)
    ny = y.norm()
    if ny.denominator != 1:
        raise InternalCheckError("integral element with non-integer norm")
    candidates: set[int] = set(factorint(m))
    n_int = int(ny)
    if abs(n_int) != 1:
        candidates |= set(factorint(n_int))
    out: dict[PrimeIdeal, int] = {}
    for p in sorted(candidates):
        for P in factor_rational_prime(x.field, p):
            v = valuation(x, P)
            if v != 0:
                out[P] = v
    return out


def norm(x: NfElement) -> Fraction:
    """Field norm (signed) of an element."""
    return x.norm()


# ---------------------------------------------------------------------------
# principal generators


def principal_generator(I: FractionalIdeal) -> NfElement | None:
    """A generator when I is principal and the search is conclusive.

    Rational field: always conclusive.  Imaginary quadratic: conclusive
    (positive definite norm form enumeration).  Real quadratic:
    conclusive via a fundamental-unit-normalized box.  Degree >= 3:
    returns None unless a small-box search happens to succeed.
    """
    field = I.field
    d = field.degree
    if d == 1:
        return field.from_rational(Fraction(I.num.rows[0][0], I.den))
    target = I.norm()
    if d == 2:
        disc = field.discriminant
        if disc < 0:
            found = _search_definite(I, target)
        else:
            found = _search_real_quadratic(I, target)
        if found is not None:
            lead = next(c for c in found.integral_coords() if c != 0)
            if lead < 0:
                found = -found
        return found
    # bounded heuristic box for higher degree
    basis = I.basis_elements()
    for radius in (1, 2, 3):
        for combo in _box(d, radius):
            x = field.zero()
            for c, b in zip(combo, basis):
                x = x + b.scale(c)
            if not x.is_zero() and abs(x.norm()) == target and I.contains(x):
                return x
    return None


def _box(dim: int, radius: int):
    import itertools

    return itertools.product(range(-radius, radius + 1), repeat=dim)


def _norm_form(I: FractionalIdeal) -> tuple[Fraction, Fraction, Fraction]:
    u1, u2 = I.basis_elements()
    alpha = u1.norm()
    gamma = u2.norm()
    beta = (u1 + u2).norm() - alpha - gamma
    return alpha, beta, gamma


def _search_definite(I: FractionalIdeal, target: Fraction) -> NfElement | None:
    alpha, beta, gamma = _norm_form(I)
    u1, u2 = I.basis_elements()
    # 4 alpha N = (2 alpha a + beta b)^2 + (4 alpha gamma - beta^2) b^2
    det4 = 4 * alpha * gamma - beta * beta
    if det4 <= 0:
        raise InternalCheckError("norm form not definite on an imaginary field")
    bmax = _isqrt_frac(4 * alpha * target / det4) + 1
    for b in range(-bmax, bmax + 1):
        for a in _solve_quadratic_int(alpha, beta * b, gamma * b * b - target):
            x = u1.scale(a) + u2.scale(b)
            if not x.is_zero() and abs(x.norm()) == target:
                return x
    return None


def _embedding_bound(x: NfElement) -> Fraction:
    """Upper bound on |sigma(x)| over both real embeddings of a quadratic field."""
    p, q = x.coords
    f = x.field.min_poly
    theta_max = 1 + max(abs(f.coeffs[1]), abs(f.coeffs[2]))
    return abs(p) + abs(q) * theta_max


def _search_real_quadratic(I: FractionalIdeal, target: Fraction) -> NfElement | None:
    # Any generator can be unit-scaled so that both embeddings have
    # absolute value at most sqrt(N(I) * eps); Cramer against the lattice
    # basis then bounds the second coordinate, since the embedding matrix
    # of the basis has |det| = sqrt(disc) * N(I).
    field = I.field
    eps = fundamental_unit(field)
    eps_bound = _embedding_bound(eps) + 1
    u1, u2 = I.basis_elements()
    alpha, beta, gamma = _norm_form(I)
    x_bound = _isqrt_frac(target * eps_bound) + 1
    covol = _isqrt_frac(Fraction(field.discriminant)) * target
    if covol == 0:
        raise InternalCheckError("degenerate lattice in real quadratic search")
    bmax = _ceil_frac(2 * x_bound * _embedding_bound(u1) / covol) + 1
    for b in range(-bmax, bmax + 1):
        for sign in (1, -1):
            for a in _solve_quadratic_int(alpha, beta * b, gamma * b * b - sign * target):
                x = u1.scale(a) + u2.scale(b)
                if not x.is_zero() and abs(x.norm()) == target:
                    return x
    return None


def _ceil_frac(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _isqrt_frac(q: Fraction) -> int:
    q = Fraction(q)
    if q < 0:
        return 0
    return math.isqrt(q.numerator // q.denominator)


def _solve_quadratic_int(A: Fraction, B: Fraction, C: Fraction) -> list[int]:
    """Integer solutions a of A a^2 + B a + C = 0 (A != 0)."""
    disc = B * B - 4 * A * C
    if disc < 0:
        return []
    num = disc.numerator * disc.denominator
    root = math.isqrt(num)
    if root * root != num:
        return []
    sqrt_disc = Fraction(root, disc.denominator)
    out = []
    for sgn in (1, -1):
        cand = (-B + sgn * sqrt_disc) / (2 * A)
        if cand.denominator == 1:
            out.append(int(cand))
    return sorted(set(out))


def fundamental_unit(field: NumberField) -> NfElement:
    """Fundamental unit (> 1) of a real quadratic field.

    Runs the continued fraction of the integral basis generator omega,
    written as (P + sqrt(Dcf)) / Q; the first convergent h/k with
    |N(h - k * conj(omega))| = 1 gives the fundamental unit.
    """
    if field.degree != 2 or field.discriminant < 0:
        raise ValueError("fundamental units computed only for real quadratic fields")
    D0 = field.discriminant
    if D0 % 4 == 0:
        Dcf, P, Q = D0 // 4, 0, 1
    else:
        Dcf, P, Q = D0, 1, 2
    omega = field.element(field.basis_matrix.column(1))
    tr = omega.trace()
    nm = omega.norm()
    s = math.isqrt(Dcf)
    hm1, hm2 = 1, 0
    km1, km2 = 0, 1
    for _ in range(100000):
        a = (P + s) // Q
        h = a * hm1 + hm2
        k = a * km1 + km2
        # N(h - k * conj(omega)), with conj(omega) = tr - omega
        cand_norm = Fraction(h * h) - tr * h * k + nm * k * k
        if abs(cand_norm) == 1:
            unit = field.from_rational(h - tr * k) + omega.scale(k)
            if abs(unit.norm()) != 1:
                raise InternalCheckError("unit candidate has wrong norm")
            return unit
        hm2, hm1 = hm1, h
        km2, km1 = km1, k
        P = a * Q - P
        if (Dcf - P * P) % Q != 0:
            raise InternalCheckError("continued fraction state broke the invariant")
        Q = (Dcf - P * P) // Q
        if Q <= 0:
            raise InternalCheckError("continued fraction state left the positive cycle")
    raise InternalCheckError("continued fraction did not produce a unit")

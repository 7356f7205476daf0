"""Twisted group rings K(G;H) and their module structure.

The ring is the free left K-module on basis symbols, one per group
element, with the product extended distributively from

    gbar * hbar = bracket(g,h) * (gh)bar
    gbar * (b * hbar) = chi(g)(b) * bracket(g,h) * (gh)bar

Elements are sparse coefficient maps (zeros dropped).  The ring is
associative exactly because the bracket satisfies the E2 law; the tests
re-verify that on basis triples for every enumerated system.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    GlatticeError,
    NonCommutativeCarrier,
    NotAssociated,
    ParentMismatch,
    TooLarge,
)
from .extension import factor_system_from_rep, validate_factor_system
from .linalg import SemilinearMap, VectorSpace, add_vectors, scale_vector
from .rep import SemilinearProjectiveRep, validate_rep

_EXHAUSTIVE_MODULE_LIMIT = 32


class TwistedGroupRing:
    """The twisted group ring of a factor system: rank |G| over K."""

    def __init__(self, fs):
        report = validate_factor_system(fs)
        if not report.ok:
            raise GlatticeError(f"invalid factor system: {report}")
        self.fs = fs
        self.ring = fs.ring
        self.group = fs.group
        self.rank = fs.group.order

    def element(self, coeffs):
        """Build an element from {group element: scalar} data; zero
        coefficients are dropped to keep the sparse form canonical."""
        clean = {}
        for g, value in coeffs.items():
            scalar = self.ring.scalar(value)
            if not scalar.is_zero():
                clean[g] = scalar
        return TwistedRingElement(self, tuple(sorted(clean.items())))

    def zero(self):
        return self.element({})

    def basis_element(self, g):
        return self.element({g: 1})

    def one(self):
        return self.basis_element(0)

    def basis(self):
        return [self.basis_element(g) for g in range(self.group.order)]

    def all_elements(self):
        """Every element (finite carriers, small rank only)."""
        if not self.ring.is_finite():
            raise GlatticeError("cannot enumerate elements over an infinite carrier")
        count = self.ring.order ** self.rank
        if count > 4096:
            raise TooLarge(f"{count} ring elements is too many to enumerate")
        out = []
        for coeffs in itertools.product(self.ring.elements(), repeat=self.rank):
            out.append(self.element(dict(enumerate(coeffs))))
        return out

    def __eq__(self, other):
        return isinstance(other, TwistedGroupRing) and self.fs == other.fs

    def __repr__(self):
        return f"TwistedGroupRing(K={self.ring!r}, G={self.group.name})"


class TwistedRingElement:
    """A sparse sum of scalar multiples of the basis symbols."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent, coeffs):
        self.parent = parent
        self.coeffs = coeffs  # sorted tuple of (g, Scalar), no zeros

    def coeff(self, g):
        for h, value in self.coeffs:
            if h == g:
                return value
        return self.parent.ring.zero()

    def support(self):
        return [g for g, _ in self.coeffs]

    def _check_parent(self, other):
        if self.parent != other.parent:
            raise ParentMismatch("elements of different twisted group rings")

    def __add__(self, other):
        self._check_parent(other)
        out = dict(self.coeffs)
        for g, value in other.coeffs:
            out[g] = out.get(g, self.parent.ring.zero()) + value
        return self.parent.element(out)

    def __neg__(self):
        return self.parent.element({g: -value for g, value in self.coeffs})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        """Left scalar multiple a * self."""
        a = self.parent.ring.scalar(a)
        return self.parent.element({g: a * value for g, value in self.coeffs})

    def __mul__(self, other):
        self._check_parent(other)
        fs = self.parent.fs
        group = self.parent.group
        out = {}
        zero = self.parent.ring.zero()
        for g, a in self.coeffs:
            chi_g = fs.chi[g]
            for h, b in other.coeffs:
                k = group.cayley[g][h]
                term = a * chi_g(b) * fs.bracket[g][h]
                out[k] = out.get(k, zero) + term
        return self.parent.element(out)

    def __eq__(self, other):
        return (
            isinstance(other, TwistedRingElement)
            and self.parent == other.parent
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        labels = self.parent.group.labels
        return " + ".join(f"{value!r}*~{labels[g]}" for g, value in self.coeffs)


def tgr_add(u, v):
    return u + v


def tgr_scalar_mul(c, u):
    return u.scale(c)


def tgr_mul(u, v):
    return u * v


# ---------------------------------------------------------------------------
# the regular representation (the extension acting on K^{|G|})


def regular_representation(tgr):
    """rho(g): v -> gbar * v on coordinates indexed by group elements.

    Concretely rho(g) has theta = chi(g) and matrix entry bracket(g,h)
    in row g*h, column h, which makes rho(g)rho(h) = bracket(g,h)
    rho(gh) an exact matrix identity.  The extracted factor system is
    compared against the input system on every call.
    """
    fs = tgr.fs
    if not fs.ring.is_commutative():
        raise NonCommutativeCarrier(
            "matrix form of the regular representation needs a field; "
            "use the ring product directly for the quaternions"
        )
    group, ring = fs.group, fs.ring
    n = group.order
    space = VectorSpace(ring, n)
    zero = ring.zero()
    maps = {}
    for g in range(n):
        matrix = [[zero] * n for _ in range(n)]
        for h in range(n):
            matrix[group.cayley[g][h]][h] = fs.bracket[g][h]
        maps[g] = SemilinearMap(space, matrix, fs.chi[g])
    rho = SemilinearProjectiveRep(group, space, maps)
    validate_rep(rho)
    if factor_system_from_rep(rho) != fs:
        raise GlatticeError("regular representation does not reproduce its system")
    return rho


def vector_to_ring_element(tgr, v):
    """Identify K^{|G|} with the ring: coordinate h becomes the hbar term."""
    return tgr.element(dict(enumerate(v)))


def ring_element_to_vector(tgr, u):
    space = VectorSpace(tgr.ring, tgr.rank)
    coords = list(space.zero_vector())
    for g, value in u.coeffs:
        coords[g] = value
    return tuple(coords)


# ---------------------------------------------------------------------------
# the algebra criterion


@dataclass
class AlgebraVerdict:
    ok: bool
    law: str | None = None
    scalar: object = None
    left_factor: object = None
    right_factor: object = None
    lhs: object = None
    rhs: object = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "algebra"
        return (
            f"not an algebra: {self.law} fails with a={self.scalar!r}, "
            f"u={self.left_factor!r}, v={self.right_factor!r}: "
            f"{self.lhs!r} != {self.rhs!r}"
        )


def _bimodule_scalars(ring):
    if ring.is_finite():
        return ring.elements()
    if ring.is_commutative():
        return [ring.scalar(Fraction(n, d)) for n in (-2, -1, 0, 1, 3) for d in (1, 2, 5)]
    return [
        ring.scalar((1, 0, 0, 0)),
        ring.scalar((0, 1, 0, 0)),
        ring.scalar((0, 0, 1, 0)),
        ring.scalar((0, 0, 0, 1)),
        ring.scalar((Fraction(1, 2), Fraction(-2), Fraction(0), Fraction(3, 7))),
    ]


def is_algebra(tgr):
    """Decide whether the twisted ring is a K-algebra, with a witness.

    The scalar action must satisfy (a u) v = a (u v) and u (a v) =
    a (u v).  The first law holds for free; the second fails exactly
    when either K is noncommutative or some chi(g) moves a scalar, and
    in both cases a concrete witness triple is produced and verified.
    When the verdict is positive the two laws are checked on all basis
    pairs against the scalar sample.
    """
    ring = tgr.ring
    one_bar = tgr.one()
    if not ring.is_commutative():
        a = ring.scalar((0, 1, 0, 0))  # i
        b = ring.scalar((0, 0, 1, 0))  # j
        u = one_bar.scale(b)
        v = one_bar
        lhs = u * v.scale(a)
        rhs = (u * v).scale(a)
        if lhs == rhs:
            raise GlatticeError("quaternion commutator witness failed to fail")
        return AlgebraVerdict(False, "u*(a*v) == a*(u*v)", a, u, v, lhs, rhs)
    for g in range(tgr.group.order):
        phi = tgr.fs.chi[g]
        if phi.is_identity():
            continue
        for a in ring.elements():
            if phi(a) != a:
                u = tgr.basis_element(g)
                v = one_bar
                lhs = u * v.scale(a)
                rhs = (u * v).scale(a)
                if lhs == rhs:
                    raise GlatticeError("chi witness failed to fail")
                return AlgebraVerdict(False, "u*(a*v) == a*(u*v)", a, u, v, lhs, rhs)
    # commutative carrier, trivial chi: verify the bimodule laws
    for g in range(tgr.group.order):
        for h in range(tgr.group.order):
            u, v = tgr.basis_element(g), tgr.basis_element(h)
            uv = u * v
            for a in _bimodule_scalars(ring):
                if (u.scale(a)) * v != uv.scale(a):
                    raise GlatticeError("left bimodule law failed unexpectedly")
                if u * (v.scale(a)) != uv.scale(a):
                    raise GlatticeError("right bimodule law failed unexpectedly")
    return AlgebraVerdict(True)


# ---------------------------------------------------------------------------
# modules over the twisted ring


def module_action(tgr, rep, element, vector):
    """Act by a ring element on a vector: sum of a_g * rho(g)(v).

    The representation must be associated with the ring's factor
    system; that is re-checked (NotAssociated otherwise).
    """
    _check_associated(tgr, rep)
    return _module_apply(rep, element, vector)


def _module_apply(rep, element, vector):
    space = rep.space
    out = space.zero_vector()
    for g, a in element.coeffs:
        out = add_vectors(out, scale_vector(a, rep.maps[g].apply(vector)))
    return out


def _check_associated(tgr, rep):
    if rep.group != tgr.group or rep.space.ring != tgr.ring:
        raise NotAssociated("representation is for a different (K, G)")
    if factor_system_from_rep(rep) != tgr.fs:
        raise NotAssociated("representation has a different factor system")


def _seeded_rationals(seed, count):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        out.append(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
    return out


def validate_module_axioms(tgr, rep, seed=0, samples=100):
    """Check the five module laws for V under the ring action.

      (1) s(u+v) = su+sv        (2) (s+t)v = sv+tv
      (3) s(tv) = (st)v         (4) 1bar v = v
      (5) (b s)v = b(sv)

    Exhaustive over finite carriers (ring elements x vectors); over the
    rationals the laws are checked on basis data plus ``samples`` seeded
    pseudorandom combinations -- the laws are (semi)linear in each slot,
    so basis coverage carries the content and samples guard slips.
    """
    _check_associated(tgr, rep)
    ring = tgr.ring
    space = rep.space
    if ring.is_finite():
        if ring.order**tgr.rank > _EXHAUSTIVE_MODULE_LIMIT or ring.order**space.dim > _EXHAUSTIVE_MODULE_LIMIT:
            raise TooLarge("exhaustive module check too big; see validate docstring")
        elements = tgr.all_elements()
        vectors = space.all_vectors()
        scalars = ring.elements()
    else:
        rats = _seeded_rationals(seed, samples * (tgr.rank + space.dim + 1))
        it = iter(rats)
        elements = tgr.basis() + [
            tgr.element({g: next(it) for g in range(tgr.rank)}) for _ in range(samples // 10)
        ]
        vectors = list(space.basis()) + [
            space.vector([next(it) for _ in range(space.dim)]) for _ in range(samples // 10)
        ]
        scalars = [ring.scalar(next(it)) for _ in range(5)]

    for s in elements:
        for u in vectors:
            for v in vectors:
                if _module_apply(rep, s, add_vectors(u, v)) != add_vectors(
                    _module_apply(rep, s, u), _module_apply(rep, s, v)
                ):
                    return False, ("law1", s, u, v)
    for s in elements:
        for t in elements:
            for v in vectors:
                lhs = _module_apply(rep, s + t, v)
                rhs = add_vectors(_module_apply(rep, s, v), _module_apply(rep, t, v))
                if lhs != rhs:
                    return False, ("law2", s, t, v)
                lhs = _module_apply(rep, s, _module_apply(rep, t, v))
                rhs = _module_apply(rep, s * t, v)
                if lhs != rhs:
                    return False, ("law3", s, t, v)
    one_bar = tgr.one()
    for v in vectors:
        if _module_apply(rep, one_bar, v) != v:
            return False, ("law4", v)
    for b in scalars:
        for s in elements:
            for v in vectors:
                lhs = _module_apply(rep, s.scale(b), v)
                rhs = scale_vector(b, _module_apply(rep, s, v))
                if lhs != rhs:
                    return False, ("law5", b, s, v)
    return True, None

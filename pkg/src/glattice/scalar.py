"""Exact division-ring arithmetic.

Four scalar carriers are supported:

* ``GF(p)`` -- prime fields, residues stored as ints in ``[0, p)``.
* ``GF(p^k)`` -- extension fields, elements stored as little-endian
  coefficient tuples of length ``k`` over ``GF(p)``, reduced modulo a
  monic irreducible polynomial of degree ``k``.
* the rationals, stored as ``fractions.Fraction`` (always reduced,
  positive denominator).
* rational quaternions ``a + bi + cj + dk``, stored as 4-tuples of
  ``Fraction``; the one noncommutative carrier.

Everything is immutable and hashable; equality is decidable because
payloads are kept in canonical form.  No floating point is used anywhere.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import (
    DivisionByZero,
    GlatticeError,
    InfiniteAutomorphismGroup,
    InfiniteCarrier,
    RingMismatch,
)

PRIME = "prime"
EXTENSION = "extension"
RATIONALS = "rationals"
QUATERNIONS = "quaternions"

_QUAT_ZERO = (Fraction(0), Fraction(0), Fraction(0), Fraction(0))
_QUAT_ONE = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p), little-endian coefficient tuples


def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _poly_trim(out)


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_divmod(a, b, p):
    """Quotient and remainder of a by b over GF(p); b must be nonzero."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    q = [0] * max(len(a) - db, 0)
    while len(_poly_trim(a)) - 1 >= db and _poly_trim(a):
        a = list(_poly_trim(a))
        da = len(a) - 1
        if da < db:
            break
        coef = (a[-1] * inv_lb) % p
        q[da - db] = coef
        for i in range(db + 1):
            a[da - db + i] = (a[da - db + i] - coef * b[i]) % p
    return _poly_trim(q), _poly_trim(a)


def _poly_mod(a, m, p):
    return _poly_divmod(a, m, p)[1]


def _poly_egcd(a, b, p):
    """Extended gcd: returns (g, s, t) with s*a + t*b = g (g monic)."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_add(s0, _poly_mul(tuple((-c) % p for c in q), s1, p), p)
        t0, t1 = t1, _poly_add(t0, _poly_mul(tuple((-c) % p for c in q), t1, p), p)
    if r0:
        lead_inv = pow(r0[-1], p - 2, p)
        scale = (lead_inv,)
        r0 = _poly_mul(r0, scale, p)
        s0 = _poly_mul(s0, scale, p)
        t0 = _poly_mul(t0, scale, p)
    return r0, s0, t0


def _poly_is_irreducible(m, p):
    """Trial division against every monic polynomial of lower positive degree."""
    deg = len(m) - 1
    if deg < 1:
        return False
    for d in range(1, deg):
        for body in itertools.product(range(p), repeat=d):
            cand = tuple(body) + (1,)
            if not _poly_mod(m, cand, p):
                return False
    return True


def smallest_irreducible(p, k):
    """Lexicographically smallest monic irreducible of degree k over GF(p).

    Candidates are ordered by the base-p encoding of their non-leading
    coefficients, so the choice is deterministic and reproducible.
    """
    for encoding in range(p**k):
        body = []
        e = encoding
        for _ in range(k):
            body.append(e % p)
            e //= p
        cand = tuple(body) + (1,)
        if _poly_is_irreducible(cand, p):
            return cand
    raise GlatticeError(f"no irreducible polynomial of degree {k} over GF({p})")


# ---------------------------------------------------------------------------
# quaternion helpers, payloads are 4-tuples of Fraction


def _quat_mul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def _quat_inv(a):
    norm = a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]
    return (a[0] / norm, -a[1] / norm, -a[2] / norm, -a[3] / norm)


class DivisionRing:
    """A division ring specification: which carrier, and its parameters.

    Instances are immutable; two specs compare equal when they describe
    the same carrier with the same parameters (including the modulus for
    extension fields).
    """

    __slots__ = ("kind", "p", "k", "modulus")

    def __init__(self, kind, p=None, k=None, modulus=None):
        self.kind = kind
        self.p = p
        self.k = k
        self.modulus = modulus

    # -- constructors -------------------------------------------------

    @classmethod
    def gf(cls, p, k=1, modulus=None):
        if not _is_prime(p):
            raise GlatticeError(f"{p} is not prime")
        if k == 1:
            if modulus is not None:
                raise GlatticeError("prime fields take no modulus")
            return cls(PRIME, p=p)
        if k < 2:
            raise GlatticeError("extension degree must be >= 2")
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise GlatticeError(
                    f"modulus must be monic of degree {k} (little-endian, length {k + 1})"
                )
            if not _poly_is_irreducible(modulus, p):
                raise GlatticeError("modulus is reducible")
        return cls(EXTENSION, p=p, k=k, modulus=modulus)

    @classmethod
    def rationals(cls):
        return cls(RATIONALS)

    @classmethod
    def quaternions(cls):
        return cls(QUATERNIONS)

    # -- structure ----------------------------------------------------

    def is_finite(self):
        return self.kind in (PRIME, EXTENSION)

    def is_commutative(self):
        return self.kind != QUATERNIONS

    @property
    def order(self):
        if self.kind == PRIME:
            return self.p
        if self.kind == EXTENSION:
            return self.p**self.k
        return None

    def __eq__(self, other):
        return (
            isinstance(other, DivisionRing)
            and self.kind == other.kind
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.kind, self.p, self.k, self.modulus))

    def __repr__(self):
        if self.kind == PRIME:
            return f"GF({self.p})"
        if self.kind == EXTENSION:
            return f"GF({self.p}^{self.k})"
        if self.kind == RATIONALS:
            return "QQ"
        return "HH(QQ)"

    # -- element construction ------------------------------------------

    def zero(self):
        return Scalar(self, self._zero_payload())

    def one(self):
        return Scalar(self, self._one_payload())

    def _zero_payload(self):
        if self.kind == PRIME:
            return 0
        if self.kind == EXTENSION:
            return (0,) * self.k
        if self.kind == RATIONALS:
            return Fraction(0)
        return _QUAT_ZERO

    def _one_payload(self):
        if self.kind == PRIME:
            return 1
        if self.kind == EXTENSION:
            return (1,) + (0,) * (self.k - 1)
        if self.kind == RATIONALS:
            return Fraction(1)
        return _QUAT_ONE

    def scalar(self, value):
        """Coerce ``value`` into an element of this ring.

        Accepts ints (residue / integer embedding), Fractions and
        fraction strings, coefficient sequences for extension fields,
        and 4-sequences for quaternions.
        """
        if isinstance(value, Scalar):
            if value.ring != self:
                raise RingMismatch(f"scalar of {value.ring} used in {self}")
            return value
        if self.kind == PRIME:
            if isinstance(value, int):
                return Scalar(self, value % self.p)
        elif self.kind == EXTENSION:
            if isinstance(value, int):
                return self.from_index(value % self.order)
            if isinstance(value, (list, tuple)):
                if len(value) > self.k:
                    raise GlatticeError("coefficient vector longer than the degree")
                coeffs = tuple(int(c) % self.p for c in value)
                return Scalar(self, coeffs + (0,) * (self.k - len(coeffs)))
        elif self.kind == RATIONALS:
            if isinstance(value, (int, str, Fraction)):
                return Scalar(self, Fraction(value))
        elif self.kind == QUATERNIONS:
            if isinstance(value, (int, str, Fraction)):
                return Scalar(
                    self, (Fraction(value), Fraction(0), Fraction(0), Fraction(0))
                )
            if isinstance(value, (list, tuple)) and len(value) == 4:
                return Scalar(self, tuple(Fraction(c) for c in value))
        raise GlatticeError(f"cannot interpret {value!r} as an element of {self}")

    def from_index(self, i):
        """The i-th element in enumeration order (finite rings only)."""
        if self.kind == PRIME:
            return Scalar(self, i % self.p)
        if self.kind == EXTENSION:
            # little-endian base-p digits
            coeffs, e = [], i
            for _ in range(self.k):
                coeffs.append(e % self.p)
                e //= self.p
            return Scalar(self, tuple(coeffs))
        raise InfiniteCarrier(f"{self} is not enumerable")

    def elements(self):
        """All elements in a fixed deterministic order (finite rings only)."""
        if not self.is_finite():
            raise InfiniteCarrier(f"{self} is not enumerable")
        return [self.from_index(i) for i in range(self.order)]

    def units(self):
        """All nonzero elements, in enumeration order (finite rings only)."""
        return [a for a in self.elements() if not a.is_zero()]

    # -- payload arithmetic (internal) ----------------------------------

    def _add(self, a, b):
        if self.kind == PRIME:
            return (a + b) % self.p
        if self.kind == EXTENSION:
            return tuple((x + y) % self.p for x, y in zip(a, b))
        if self.kind == RATIONALS:
            return a + b
        return tuple(x + y for x, y in zip(a, b))

    def _neg(self, a):
        if self.kind == PRIME:
            return (-a) % self.p
        if self.kind == EXTENSION:
            return tuple((-x) % self.p for x in a)
        if self.kind == RATIONALS:
            return -a
        return tuple(-x for x in a)

    def _mul(self, a, b):
        if self.kind == PRIME:
            return (a * b) % self.p
        if self.kind == EXTENSION:
            prod = _poly_mod(_poly_mul(_poly_trim(a), _poly_trim(b), self.p), self.modulus, self.p)
            return prod + (0,) * (self.k - len(prod))
        if self.kind == RATIONALS:
            return a * b
        return _quat_mul(a, b)

    def _inv(self, a):
        if a == self._zero_payload():
            raise DivisionByZero(f"inverse of zero in {self}")
        if self.kind == PRIME:
            return pow(a, self.p - 2, self.p)
        if self.kind == EXTENSION:
            g, s, _ = _poly_egcd(_poly_trim(a), self.modulus, self.p)
            if g != (1,):
                raise DivisionByZero("element not invertible (reducible modulus?)")
            s = _poly_mod(s, self.modulus, self.p)
            return s + (0,) * (self.k - len(s))
        if self.kind == RATIONALS:
            return Fraction(1) / a
        return _quat_inv(a)


class Scalar:
    """An element of a :class:`DivisionRing`, stored in canonical form."""

    __slots__ = ("ring", "payload")

    def __init__(self, ring, payload):
        self.ring = ring
        self.payload = payload

    def _coerced(self, other):
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.scalar(other)

    def __add__(self, other):
        other = self._coerced(other)
        return Scalar(self.ring, self.ring._add(self.payload, other.payload))

    def __sub__(self, other):
        other = self._coerced(other)
        return Scalar(self.ring, self.ring._add(self.payload, self.ring._neg(other.payload)))

    def __neg__(self):
        return Scalar(self.ring, self.ring._neg(self.payload))

    def __mul__(self, other):
        other = self._coerced(other)
        return Scalar(self.ring, self.ring._mul(self.payload, other.payload))

    def inverse(self):
        return Scalar(self.ring, self.ring._inv(self.payload))

    def is_zero(self):
        return self.payload == self.ring._zero_payload()

    def is_one(self):
        return self.payload == self.ring._one_payload()

    def is_central(self):
        """Whether the element commutes with everything in its ring."""
        if self.ring.kind != QUATERNIONS:
            return True
        return self.payload[1] == 0 and self.payload[2] == 0 and self.payload[3] == 0

    def __eq__(self, other):
        return (
            isinstance(other, Scalar)
            and self.ring == other.ring
            and self.payload == other.payload
        )

    def __hash__(self):
        return hash((self.ring, self.payload))

    def sort_key(self):
        """A total order on elements of one ring, used for determinism."""
        if self.ring.kind == PRIME:
            return self.payload
        if self.ring.kind == EXTENSION:
            e = 0
            for c in reversed(self.payload):
                e = e * self.ring.p + c
            return e
        return self.payload  # Fraction and tuples of Fractions order fine

    def index(self):
        """Enumeration index of this element (finite rings only)."""
        if not self.ring.is_finite():
            raise InfiniteCarrier(f"{self.ring} has no element indices")
        return self.sort_key()

    def __repr__(self):
        if self.ring.kind == PRIME:
            return str(self.payload)
        if self.ring.kind == EXTENSION:
            return "[" + ",".join(str(c) for c in self.payload) + "]"
        if self.ring.kind == RATIONALS:
            return str(self.payload)
        return "(" + ",".join(str(c) for c in self.payload) + ")"


# ---------------------------------------------------------------------------
# ring automorphisms

IDENTITY = "identity"
FROBENIUS = "frobenius"
INNER = "inner"


class RingAutomorphism:
    """A ring automorphism in canonical form.

    Three shapes exist: the identity (any ring), Frobenius powers
    ``x -> x^(p^j)`` on extension fields, and inner automorphisms
    ``x -> u x u^-1`` on the quaternions.  Construction normalizes:
    Frobenius power 0 collapses to the identity, inner units are scaled
    so the first nonzero coordinate is 1, and central units collapse to
    the identity.  Equality is therefore structural equality of maps.
    """

    __slots__ = ("ring", "kind", "power", "unit")

    def __init__(self, ring, kind, power=0, unit=None):
        self.ring = ring
        self.kind = kind
        self.power = power
        self.unit = unit

    @classmethod
    def identity(cls, ring):
        return cls(ring, IDENTITY)

    @classmethod
    def frobenius(cls, ring, j):
        if ring.kind != EXTENSION:
            raise GlatticeError("Frobenius automorphisms live on extension fields")
        j %= ring.k
        if j == 0:
            return cls.identity(ring)
        return cls(ring, FROBENIUS, power=j)

    @classmethod
    def inner(cls, unit):
        ring = unit.ring
        if ring.kind != QUATERNIONS:
            raise GlatticeError("inner automorphisms are only nontrivial on quaternions")
        if unit.is_zero():
            raise DivisionByZero("conjugation by zero")
        if unit.is_central():
            return cls.identity(ring)
        coords = unit.payload
        lead = next(c for c in coords if c != 0)
        normalized = tuple(c / lead for c in coords)
        return cls(ring, INNER, unit=Scalar(ring, normalized))

    def is_identity(self):
        return self.kind == IDENTITY

    def apply(self, a):
        if a.ring != self.ring:
            raise RingMismatch(f"automorphism of {self.ring} applied to {a.ring} element")
        if self.kind == IDENTITY:
            return a
        if self.kind == FROBENIUS:
            result = self.ring.one()
            base = a
            e = self.ring.p**self.power
            while e:
                if e & 1:
                    result = result * base
                base = base * base
                e >>= 1
            return result
        return self.unit * a * self.unit.inverse()

    def __call__(self, a):
        return self.apply(a)

    def compose(self, other):
        """self after other: (self.compose(other))(a) == self(other(a))."""
        if self.ring != other.ring:
            raise RingMismatch("automorphisms of different rings")
        if self.kind == IDENTITY:
            return other
        if other.kind == IDENTITY:
            return self
        if self.kind == FROBENIUS and other.kind == FROBENIUS:
            return RingAutomorphism.frobenius(self.ring, self.power + other.power)
        if self.kind == INNER and other.kind == INNER:
            return RingAutomorphism.inner(self.unit * other.unit)
        raise GlatticeError("cannot compose automorphisms of mixed shape")

    def inverse(self):
        if self.kind == IDENTITY:
            return self
        if self.kind == FROBENIUS:
            return RingAutomorphism.frobenius(self.ring, self.ring.k - self.power)
        return RingAutomorphism.inner(self.unit.inverse())

    def __eq__(self, other):
        return (
            isinstance(other, RingAutomorphism)
            and self.ring == other.ring
            and self.kind == other.kind
            and self.power == other.power
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.ring, self.kind, self.power, self.unit))

    def __repr__(self):
        if self.kind == IDENTITY:
            return "id"
        if self.kind == FROBENIUS:
            return f"frob^{self.power}"
        return f"inner({self.unit!r})"


def ring_arithmetic(a, b=None, kind="add"):
    """Dispatch arithmetic by name: add | sub | mul | inv | neg.

    Thin functional wrapper over the operator interface; inv and neg
    ignore ``b``.
    """
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "neg":
        return -a
    if kind == "inv":
        return a.inverse()
    raise GlatticeError(f"unknown arithmetic kind {kind!r}")


def apply_automorphism(phi, a):
    return phi.apply(a)


def _verify_automorphism(phi):
    ring = phi.ring
    elems = ring.elements()
    for a in elems:
        for b in elems:
            if phi(a * b) != phi(a) * phi(b):
                raise GlatticeError(f"{phi!r} not multiplicative at ({a!r},{b!r})")
            if phi(a + b) != phi(a) + phi(b):
                raise GlatticeError(f"{phi!r} not additive at ({a!r},{b!r})")


def list_automorphisms(ring):
    """All ring automorphisms of a finite field, or [id] for the rationals.

    Finite fields return the full Galois group (Frobenius powers), each
    checked to be additive and multiplicative on every element pair.
    The rationals are rigid, so the singleton identity comes back.  The
    quaternions have a continuum of inner automorphisms and raise.
    """
    if ring.kind == PRIME:
        return [RingAutomorphism.identity(ring)]
    if ring.kind == EXTENSION:
        autos = [RingAutomorphism.frobenius(ring, j) for j in range(ring.k)]
        for phi in autos:
            _verify_automorphism(phi)
        return autos
    if ring.kind == RATIONALS:
        return [RingAutomorphism.identity(ring)]
    raise InfiniteAutomorphismGroup(
        "the quaternions have infinitely many inner automorphisms"
    )

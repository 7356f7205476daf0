"""Factor systems, Schreier extensions of K* by G, and their equivalences.

A factor system for (K, G) is a pair (chi, bracket) with chi(g) a ring
automorphism of K and bracket(g,h) a unit of K, subject to

  E1)  chi(g)chi(h) = bracket(g,h) chi(gh) bracket(g,h)^-1   (pointwise)
  E2)  bracket(g,h) bracket(gh,k) = chi(g)(bracket(h,k)) bracket(g,hk)
  E3)  bracket(1,1) = 1

Only E3 is a normalization; the companion identities bracket(1,h) =
bracket(g,1) = 1 are consequences of E2+E3 and are asserted as theorems
in the test suite rather than assumed here.

The extension H(chi, bracket) lives on pairs (a, g) with a in K* and
multiplies as (a,g)(b,h) = (a chi(g)(b) bracket(g,h), gh).  For finite
K it materializes as a Cayley-table group (identity first, pairs in
(g, unit) order); for the rationals and quaternions it stays a lazy
multiplication object.

Equivalence of factor systems is witnessed by mu : G -> K* with

  E4)  chi'(g) = mu(g)^-1 chi(g) mu(g)     (pointwise)
  E5)  bracket(g,h) mu(gh) = mu(g) chi'(g)(mu(h)) bracket'(g,h)
  E6)  mu(1) = 1

where the unprimed system is the source and the primed one the
destination of the witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CarrierMismatch,
    GlatticeError,
    InfiniteCarrier,
    NotAssociated,
    NotEquivalent,
    NotNormalized,
    TooLarge,
    ZeroBracket,
)
from .groups import FiniteGroup
from .rep import extract_cocycle
from .scalar import QUATERNIONS, RingAutomorphism

_MATERIALIZE_LIMIT = 2000


def _noncommutative_probes(ring):
    """A small generating sample of the quaternions for pointwise checks."""
    mk = ring.scalar
    return [
        mk(1),
        mk((0, 1, 0, 0)),
        mk((0, 0, 1, 0)),
        mk((0, 0, 0, 1)),
        mk((Fraction(2, 3), Fraction(-1, 5), Fraction(1, 7), Fraction(4))),
    ]


def _carrier_sample(ring):
    if ring.is_finite():
        return ring.elements()
    if ring.kind == QUATERNIONS:
        return _noncommutative_probes(ring)
    return [ring.scalar(Fraction(n, d)) for n in (-3, -1, 0, 1, 2, 5) for d in (1, 2, 7)]


class FactorSystem:
    """The (chi, bracket) data of a Schreier extension of K* by G."""

    def __init__(self, group, ring, chi, bracket):
        order = group.order
        self.group = group
        self.ring = ring
        chi_list = []
        for g in range(order):
            phi = chi.get(g) if isinstance(chi, dict) else chi[g]
            phi = phi or RingAutomorphism.identity(ring)
            if phi.ring != ring:
                raise CarrierMismatch(f"chi({g}) acts on {phi.ring}, not {ring}")
            chi_list.append(phi)
        table = []
        for g in range(order):
            row = []
            for h in range(order):
                if isinstance(bracket, dict):
                    value = bracket.get((g, h), ring.one())
                else:
                    value = bracket[g][h]
                value = ring.scalar(value)
                if value.is_zero():
                    raise ZeroBracket(f"bracket({g},{h}) = 0", witness=(g, h))
                row.append(value)
            table.append(tuple(row))
        self.chi = tuple(chi_list)
        self.bracket = tuple(table)

    def signature(self):
        """A hashable fingerprint: chi shapes plus bracket sort keys."""
        return (
            tuple(repr(phi) for phi in self.chi),
            tuple(tuple(x.sort_key() for x in row) for row in self.bracket),
        )

    def __eq__(self, other):
        return (
            isinstance(other, FactorSystem)
            and self.group == other.group
            and self.ring == other.ring
            and self.chi == other.chi
            and self.bracket == other.bracket
        )

    def __hash__(self):
        return hash((self.ring, self.chi, self.bracket))

    def __repr__(self):
        return f"FactorSystem(G={self.group.name}, K={self.ring!r})"


def trivial_factor_system(group, ring):
    return FactorSystem(group, ring, {}, {})


@dataclass
class FsReport:
    ok: bool
    law: str | None = None
    witness: tuple = ()
    message: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "pass" if self.ok else f"{self.law} fails: {self.message} witness={self.witness}"


def _conjugation_matches(fs, g, h):
    """Pointwise E1 at (g, h): chi(g)chi(h) = [g,h] chi(gh) [g,h]^-1."""
    b = fs.bracket[g][h]
    b_inv = b.inverse()
    gh = fs.group.cayley[g][h]
    for a in _carrier_sample(fs.ring):
        left = fs.chi[g](fs.chi[h](a))
        right = b * fs.chi[gh](a) * b_inv
        if left != right:
            return a
    return None


def validate_factor_system(fs):
    """Check E3, E1, E2 in that order; report the first violation.

    Over a commutative carrier E1 degenerates to chi being a
    homomorphism into the automorphism group, which the canonical form
    of automorphisms lets us check structurally; over the quaternions
    E1 is checked pointwise on a generating sample.
    """
    group = fs.group
    if not fs.bracket[0][0].is_one():
        return FsReport(False, "E3", (0, 0), "bracket(1,1) != 1")
    commutative = fs.ring.is_commutative()
    for g in range(group.order):
        for h in range(group.order):
            if commutative:
                if fs.chi[g].compose(fs.chi[h]) != fs.chi[group.cayley[g][h]]:
                    return FsReport(
                        False, "E1", (g, h), "chi(g)chi(h) != chi(gh)"
                    )
            else:
                bad = _conjugation_matches(fs, g, h)
                if bad is not None:
                    return FsReport(
                        False,
                        "E1",
                        (g, h, bad),
                        "chi(g)chi(h) differs from conjugated chi(gh)",
                    )
    for g in range(group.order):
        for h in range(group.order):
            gh = group.cayley[g][h]
            for k in range(group.order):
                left = fs.bracket[g][h] * fs.bracket[gh][k]
                right = fs.chi[g](fs.bracket[h][k]) * fs.bracket[g][group.cayley[h][k]]
                if left != right:
                    return FsReport(
                        False,
                        "E2",
                        (g, h, k),
                        "bracket(g,h)bracket(gh,k) != chi(g)(bracket(h,k))bracket(g,hk)",
                    )
    return FsReport(True)


# ---------------------------------------------------------------------------
# the extension itself


class SchreierExtension:
    """The group on pairs (a, g) defined by a factor system.

    Finite carriers materialize to a FiniteGroup through
    ``materialize()``; infinite ones still expose exact multiplication,
    identity and inverses.
    """

    def __init__(self, fs):
        report = validate_factor_system(fs)
        if not report.ok:
            raise GlatticeError(f"invalid factor system: {report}")
        self.fs = fs
        self._materialized = None

    @property
    def is_finite(self):
        return self.fs.ring.is_finite()

    def identity(self):
        return (self.fs.ring.one(), 0)

    def multiply(self, x, y):
        a, g = x
        b, h = y
        fs = self.fs
        coeff = a * fs.chi[g](b) * fs.bracket[g][h]
        return (coeff, fs.group.cayley[g][h])

    def inverse(self, x):
        a, g = x
        fs = self.fs
        g_inv = fs.group.inverse[g]
        b = fs.chi[g].inverse()(a.inverse() * fs.bracket[g][g_inv].inverse())
        return (b, g_inv)

    def pairs(self):
        """All elements as (unit, g) pairs, in materialization order."""
        units = self.fs.ring.units()
        return [(a, g) for g in range(self.fs.group.order) for a in units]

    def materialize(self):
        """Cayley-table form of the extension (finite carriers only).

        Verifies, exhaustively, that the pair set is a group, that the
        (*, identity) layer is a normal subgroup isomorphic to K*, and
        that collapsing the layer recovers G.
        """
        if self._materialized is not None:
            return self._materialized
        fs = self.fs
        if not self.is_finite:
            raise InfiniteCarrier(f"{fs.ring} has infinitely many units")
        units = fs.ring.units()
        n_units = len(units)
        order = n_units * fs.group.order
        if order > _MATERIALIZE_LIMIT:
            raise TooLarge(f"extension order {order} exceeds {_MATERIALIZE_LIMIT}")
        pairs = self.pairs()
        index = {(a, g): i for i, (a, g) in enumerate(pairs)}
        cayley = [
            [index[self.multiply(x, y)] for y in pairs]
            for x in pairs
        ]
        labels = [f"{a!r}*{fs.group.labels[g]}" for a, g in pairs]
        group = FiniteGroup(cayley, labels=labels, name=f"H({fs.group.name})")

        # the K* layer: pairs (a, e) sit at indices 0..n_units-1
        layer = set(range(n_units))
        for i in layer:
            for j in layer:
                if cayley[i][j] not in layer:
                    raise GlatticeError("K* layer is not closed")
        unit_index = {a: i for i, a in enumerate(units)}
        for a in units:
            for b in units:
                if cayley[unit_index[a]][unit_index[b]] != unit_index[a * b]:
                    raise GlatticeError("K* layer does not copy K*")
        for i in range(order):
            for j in layer:
                conj = cayley[cayley[i][j]][group.inverse[i]]
                if conj not in layer:
                    raise GlatticeError("K* layer is not normal")
        # collapsing the layer must recover G
        for x, (_, g) in enumerate(pairs):
            for y, (_, h) in enumerate(pairs):
                if pairs[cayley[x][y]][1] != fs.group.cayley[g][h]:
                    raise GlatticeError("quotient by the K* layer is not G")
        self._materialized = (group, pairs)
        return self._materialized

    @property
    def group(self):
        return self.materialize()[0]

    def __repr__(self):
        return f"SchreierExtension({self.fs!r})"


def build_extension(fs):
    """Validate a factor system and construct its extension.

    Finite carriers are materialized (and structurally verified) right
    away; infinite ones return the lazy multiplication object.
    """
    ext = SchreierExtension(fs)
    if ext.is_finite:
        ext.materialize()
    return ext


@dataclass
class ExtensionFlags:
    central: bool
    projective: bool
    split: bool
    direct: bool

    def as_dict(self):
        return {
            "central": self.central,
            "projective": self.projective,
            "split": self.split,
            "direct": self.direct,
        }


def classify_extension(fs):
    """Flags: central / projective (chi trivial) / split (bracket trivial)
    / direct (both)."""
    central = all(x.is_central() for row in fs.bracket for x in row)
    projective = all(phi.is_identity() for phi in fs.chi)
    split = all(x.is_one() for row in fs.bracket for x in row)
    direct = projective and split
    flags = ExtensionFlags(central, projective, split, direct)
    # structural implications; violations would mean an invalid system
    if (projective or split or fs.ring.is_commutative()) and not central:
        raise GlatticeError("classification inconsistency: extension should be central")
    return flags


def factor_system_from_rep(rep):
    """The factor system (theta family, cocycle) of a representation.

    Requires the normalized form rho(e) = identity; otherwise the
    extracted bracket would violate E3.  The result is re-validated on
    every call, so this function doubles as a mechanical proof that
    representations yield factor systems.
    """
    if not rep.maps[0].is_identity():
        raise NotNormalized(
            "rho(identity) must be the identity map; use rep.normalized() first"
        )
    chi = {g: rep.maps[g].theta for g in range(rep.group.order)}
    cocycle = extract_cocycle(rep)
    bracket = {(g, h): alpha for (g, h), alpha in cocycle.items()}
    fs = FactorSystem(rep.group, rep.space.ring, chi, bracket)
    report = validate_factor_system(fs)
    if not report.ok:
        raise GlatticeError(f"extracted data is not a factor system: {report}")
    return fs


# ---------------------------------------------------------------------------
# equivalence


def _coerce_mu(fs, mu):
    out = []
    for g in range(fs.group.order):
        value = mu.get(g) if isinstance(mu, dict) else mu[g]
        value = fs.ring.scalar(value if value is not None else 1)
        if value.is_zero():
            raise ZeroBracket(f"mu({g}) = 0")
        out.append(value)
    return out


def check_equivalence(fs_src, fs_dst, mu):
    """Whether mu witnesses E4-E6 from fs_src to fs_dst."""
    if fs_src.group != fs_dst.group or fs_src.ring != fs_dst.ring:
        raise CarrierMismatch("factor systems for different (K, G)")
    mu = _coerce_mu(fs_src, mu)
    if not mu[0].is_one():
        return False
    group, ring = fs_src.group, fs_src.ring
    for g in range(group.order):
        if ring.is_commutative():
            if fs_dst.chi[g] != fs_src.chi[g]:
                return False
        else:
            mg_inv = mu[g].inverse()
            for a in _carrier_sample(ring):
                if fs_dst.chi[g](a) != mg_inv * fs_src.chi[g](a) * mu[g]:
                    return False
    for g in range(group.order):
        for h in range(group.order):
            gh = group.cayley[g][h]
            left = fs_src.bracket[g][h] * mu[gh]
            right = mu[g] * fs_dst.chi[g](mu[h]) * fs_dst.bracket[g][h]
            if left != right:
                return False
    return True


def transform_factor_system(fs, mu):
    """The equivalent system reached from fs through the witness mu.

    chi is conjugated by mu(g) (a no-op over commutative carriers) and
    the bracket follows E5.  The output satisfies
    ``check_equivalence(fs, output, mu)`` by construction.
    """
    mu = _coerce_mu(fs, mu)
    if not mu[0].is_one():
        raise NotEquivalent("mu(1) must be 1")
    group, ring = fs.group, fs.ring
    if ring.is_commutative():
        new_chi = {g: fs.chi[g] for g in range(group.order)}
    else:
        new_chi = {}
        for g in range(group.order):
            base = fs.chi[g]
            unit = base.unit if base.kind == "inner" else ring.one()
            new_chi[g] = RingAutomorphism.inner(mu[g].inverse() * unit)
    new_bracket = {}
    for g in range(group.order):
        for h in range(group.order):
            gh = group.cayley[g][h]
            value = (
                new_chi[g](mu[h]).inverse()
                * mu[g].inverse()
                * fs.bracket[g][h]
                * mu[gh]
            )
            new_bracket[(g, h)] = value
    out = FactorSystem(group, ring, new_chi, new_bracket)
    report = validate_factor_system(out)
    if not report.ok:
        raise GlatticeError(f"transformed system is invalid: {report}")
    return out


def _all_mu_candidates(fs):
    if not fs.ring.is_finite():
        raise InfiniteCarrier("cannot search equivalences over an infinite unit group")
    units = fs.ring.units()
    one = fs.ring.one()
    order = fs.group.order
    for tail in itertools.product(units, repeat=order - 1):
        yield [one] + list(tail)


def find_equivalence(fs_src, fs_dst):
    """Search all mu : G -> K* with mu(1) = 1, or return None."""
    if fs_src.group != fs_dst.group or fs_src.ring != fs_dst.ring:
        raise CarrierMismatch("factor systems for different (K, G)")
    for mu in _all_mu_candidates(fs_src):
        if check_equivalence(fs_src, fs_dst, mu):
            return mu
    return None


class ExtensionIsomorphism:
    """The isomorphism (a, g) -> (a mu(g), g) between equivalent extensions."""

    def __init__(self, fs_src, fs_dst, mu):
        if not check_equivalence(fs_src, fs_dst, mu):
            raise NotEquivalent("mu does not witness E4-E6")
        self.src = SchreierExtension(fs_src)
        self.dst = SchreierExtension(fs_dst)
        self.mu = _coerce_mu(fs_src, mu)
        self._verify()

    def apply(self, pair):
        a, g = pair
        return (a * self.mu[g], g)

    def __call__(self, pair):
        return self.apply(pair)

    def _verify(self):
        if self.src.is_finite:
            pairs = self.src.pairs()
            images = {self.apply(x) for x in pairs}
            if images != set(self.dst.pairs()):
                raise NotEquivalent("pair map is not a bijection")
            for x in pairs:
                for y in pairs:
                    if self.apply(self.src.multiply(x, y)) != self.dst.multiply(
                        self.apply(x), self.apply(y)
                    ):
                        raise NotEquivalent(
                            "pair map is not multiplicative", witness=(x, y)
                        )
        else:
            ring = self.src.fs.ring
            sample = [a for a in _carrier_sample(ring) if not a.is_zero()]
            group = self.src.fs.group
            for a, b in itertools.product(sample[:4], repeat=2):
                for g in range(group.order):
                    for h in range(group.order):
                        x, y = (a, g), (b, h)
                        if self.apply(self.src.multiply(x, y)) != self.dst.multiply(
                            self.apply(x), self.apply(y)
                        ):
                            raise NotEquivalent(
                                "pair map is not multiplicative", witness=(x, y)
                            )


def extension_iso_from_equivalence(fs_src, fs_dst, mu):
    return ExtensionIsomorphism(fs_src, fs_dst, mu)


# ---------------------------------------------------------------------------
# desk-scale enumeration and classification


def _enumeration_feasible(group, ring):
    if not ring.is_finite():
        raise InfiniteCarrier("enumeration needs a finite unit group")
    n_units = ring.order - 1
    if group.order <= 3 and n_units <= 4:
        return
    if group.order <= 4 and n_units <= 2:
        return
    raise TooLarge(
        f"enumeration not feasible for |G| = {group.order}, |K*| = {n_units}"
    )


def enumerate_factor_systems(group, ring, chi=None):
    """All factor systems with the given chi (default: trivial).

    Bracket values on pairs involving the identity are pinned to 1 --
    E2+E3 force that, so no system is missed -- and the remaining
    entries are filled depth-first with E2 instances checked as soon as
    all their pairs are assigned.
    """
    _enumeration_feasible(group, ring)
    if chi is None:
        chi = {g: RingAutomorphism.identity(ring) for g in range(group.order)}
    probe = FactorSystem(group, ring, chi, {})
    for g in range(group.order):
        for h in range(group.order):
            if probe.chi[g].compose(probe.chi[h]) != probe.chi[group.cayley[g][h]]:
                raise GlatticeError("chi is not a homomorphism; E1 cannot hold")

    order = group.order
    units = ring.units()
    free_pairs = [(g, h) for g in range(1, order) for h in range(1, order)]
    triples = [
        (g, h, k)
        for g in range(order)
        for h in range(order)
        for k in range(order)
    ]
    one = ring.one()
    assigned = {}
    for g in range(order):
        assigned[(0, g)] = one
        assigned[(g, 0)] = one

    results = []

    def value(pair):
        return assigned.get(pair)

    def e2_consistent():
        for g, h, k in triples:
            gh = group.cayley[g][h]
            hk = group.cayley[h][k]
            parts = (value((g, h)), value((gh, k)), value((h, k)), value((g, hk)))
            if any(p is None for p in parts):
                continue
            if parts[0] * parts[1] != probe.chi[g](parts[2]) * parts[3]:
                return False
        return True

    def fill(i):
        if i == len(free_pairs):
            bracket = {pair: val for pair, val in assigned.items()}
            fs = FactorSystem(group, ring, chi, bracket)
            if validate_factor_system(fs).ok:
                results.append(fs)
            return
        pair = free_pairs[i]
        for unit in units:
            assigned[pair] = unit
            if e2_consistent():
                fill(i + 1)
            del assigned[pair]

    fill(0)
    results.sort(key=lambda fs: fs.signature())
    return results


def classify_up_to_equivalence(group, ring, chi=None):
    """Equivalence classes of the enumerated systems, via mu-orbits.

    Returns a list of classes, each a list of factor systems; classes
    are sorted by their least member so output order is deterministic.
    """
    systems = enumerate_factor_systems(group, ring, chi)
    by_sig = {fs.signature(): fs for fs in systems}
    unseen = dict(by_sig)
    classes = []
    for sig in sorted(by_sig):
        if sig not in unseen:
            continue
        fs = by_sig[sig]
        orbit_sigs = set()
        for mu in _all_mu_candidates(fs):
            moved = transform_factor_system(fs, mu)
            moved_sig = moved.signature()
            if moved_sig not in by_sig:
                raise GlatticeError(
                    "equivalence moved a system outside the enumerated family"
                )
            orbit_sigs.add(moved_sig)
        classes.append(sorted(orbit_sigs))
        for s in orbit_sigs:
            unseen.pop(s, None)
    return [[by_sig[s] for s in cls] for cls in classes]


def transport_rep(rep, fs, fs_target, mu):
    """Equivalence transport: scale an fs-associated representation by mu
    to get one associated with fs_target.

    ``mu`` must witness fs_target -> fs; the output is re-extracted and
    compared against fs_target, so a successful return is a mechanical
    proof of the transport.
    """
    actual = factor_system_from_rep(rep)
    if actual != fs:
        raise NotAssociated("representation is not associated with the given system")
    if not check_equivalence(fs_target, fs, mu):
        raise NotEquivalent("mu does not witness fs_target -> fs")
    mu = _coerce_mu(fs, mu)
    moved = rep.scaled({g: mu[g] for g in range(rep.group.order)})
    moved_fs = factor_system_from_rep(moved)
    if moved_fs != fs_target:
        raise GlatticeError("transported representation has the wrong factor system")
    return moved

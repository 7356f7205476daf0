"""Semilinear projective representations and their subspace lattices.

A representation assigns to every group element an invertible
semilinear map such that rho(g) rho(h) = alpha(g,h) rho(gh) for scalars
alpha(g,h) in K*.  The scalar family (the cocycle) is extracted from a
probe vector and re-verified on a full basis plus the basis sum, which
is exactly the linear-independence argument that makes the scalar
well-defined; a disagreement raises ScalarInconsistent with the
offending data.

The bridge to lattices goes both ways: a representation over a finite
field induces an action on the subspace lattice (scalars drop out), and
an action on a subspace lattice can be pulled back to a representation
by coordinatizing each lattice automorphism through a brute-force scan
of SGL(V), first match in enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    NotCoordinatizable,
    NotProjective,
    ScalarInconsistent,
    SpaceMismatch,
)
from .lattice import GLatticeAction, LatticeAutomorphism, validate_glattice
from .linalg import (
    SemilinearMap,
    SubspaceLattice,
    add_vectors,
    enumerate_subspaces,
    iter_semilinear_automorphisms,
    map_subspace,
)


class SemilinearProjectiveRep:
    """A family g -> SemilinearMap, indexed by group element."""

    def __init__(self, group, space, maps):
        for g in range(group.order):
            if g not in maps:
                raise NotProjective(f"no map assigned to element {g}")
            f = maps[g]
            if f.space != space:
                raise SpaceMismatch(f"map for element {g} lives on {f.space}")
            if not f.is_invertible():
                raise NotProjective(f"map for element {g} is singular")
        self.group = group
        self.space = space
        self.maps = {g: maps[g] for g in range(group.order)}

    def scaled(self, eta):
        """The representation g -> eta(g) * rho(g)."""
        return SemilinearProjectiveRep(
            self.group,
            self.space,
            {g: self.maps[g].scale(eta[g]) for g in range(self.group.order)},
        )

    def normalized(self):
        """The equivalent representation with rho(e) = identity."""
        if self.maps[0].is_identity():
            return self
        c = self.maps[0].matrix[0][0]
        if c.is_zero() or not self.maps[0].theta.is_identity():
            raise NotProjective("rho(e) is not a scalar multiple of the identity")
        one = self.space.ring.one()
        eta = {g: one for g in range(self.group.order)}
        eta[0] = c.inverse()
        return self.scaled(eta)

    def __eq__(self, other):
        return (
            isinstance(other, SemilinearProjectiveRep)
            and self.group == other.group
            and self.space == other.space
            and self.maps == other.maps
        )

    def __repr__(self):
        return f"SemilinearProjectiveRep(|G|={self.group.order}, V={self.space!r})"


def rep_from_matrices(group, space, assignment):
    """Build a representation from {element: (matrix, theta)} data."""
    maps = {}
    for g, value in assignment.items():
        if isinstance(value, SemilinearMap):
            maps[g] = value
        else:
            matrix, theta = value
            maps[g] = SemilinearMap(space, matrix, theta)
    return SemilinearProjectiveRep(group, space, maps)


def _scalar_between(u, w):
    """The scalar a with u = a*w, or None (vectors over a field)."""
    a = None
    for x, y in zip(u, w):
        if y.is_zero():
            if not x.is_zero():
                return None
            continue
        cand = x * y.inverse()
        if a is None:
            a = cand
        elif a != cand:
            return None
    if a is None:
        return None  # w was the zero vector
    for x, y in zip(u, w):
        if x != a * y:
            return None
    return a


def extract_cocycle(rep):
    """The scalar family alpha(g,h) with rho(g)rho(h) = alpha(g,h)rho(gh).

    For each pair, the scalar is read off one probe vector (the first
    basis vector) and then re-verified on every remaining basis vector
    and on their sum.  Any disagreement means the input is not actually
    projective and raises ScalarInconsistent.
    """
    group, space = rep.group, rep.space
    basis = space.basis()
    # probe on every basis vector plus their sum, a deliberately generic vector
    probes = basis + [_basis_sum(space)]
    cocycle = {}
    for g in range(group.order):
        for h in range(group.order):
            composite = rep.maps[g].compose(rep.maps[h])
            target = rep.maps[group.cayley[g][h]]
            if composite.theta != target.theta:
                raise NotProjective(
                    f"theta mismatch: theta({g})theta({h}) != theta({g}*{h})",
                    witness=(g, h),
                )
            alpha = _scalar_between(composite.apply(probes[0]), target.apply(probes[0]))
            if alpha is None:
                raise ScalarInconsistent(
                    f"no scalar links rho({g})rho({h}) and rho({g}*{h}) on the first probe",
                    witness=(g, h, probes[0]),
                )
            for v in probes[1:]:
                check = _scalar_between(composite.apply(v), target.apply(v))
                if check != alpha:
                    raise ScalarInconsistent(
                        f"scalar for ({g},{h}) changes between probe vectors",
                        witness=(g, h, probes[0], v),
                    )
            cocycle[(g, h)] = alpha
    return cocycle


def _basis_sum(space):
    total = space.basis_vector(0)
    for i in range(1, space.dim):
        total = add_vectors(total, space.basis_vector(i))
    return total


@dataclass
class RepClassification:
    theta_trivial: bool
    cocycle_trivial: bool
    cocycle: dict

    @property
    def kind(self):
        if self.theta_trivial and self.cocycle_trivial:
            return "linear"
        if self.theta_trivial:
            return "projective-linear"
        if self.cocycle_trivial:
            return "semilinear"
        return "semilinear-projective"


def validate_rep(rep):
    """Verify the projective law and classify the representation.

    Classification: linear (all theta identity, all scalars 1),
    projective-linear (theta identity), semilinear (scalars 1), and the
    general semilinear-projective case.
    """
    try:
        cocycle = extract_cocycle(rep)
    except ScalarInconsistent as exc:
        raise NotProjective(str(exc), witness=exc.witness) from exc
    theta_trivial = all(
        rep.maps[g].theta.is_identity() for g in range(rep.group.order)
    )
    cocycle_trivial = all(alpha.is_one() for alpha in cocycle.values())
    return RepClassification(theta_trivial, cocycle_trivial, cocycle)


def induced_glattice(rep, lattice=None):
    """The action of G on the subspace lattice L(V) through rho.

    Scalar factors are invisible here: projectively equivalent maps move
    every subspace identically.
    """
    if lattice is None:
        lattice = enumerate_subspaces(rep.space)
    elif not isinstance(lattice, SubspaceLattice) or lattice.space != rep.space:
        raise SpaceMismatch("lattice does not coordinatize this space")
    table = []
    for g in range(rep.group.order):
        f = rep.maps[g]
        table.append([lattice.index_of(map_subspace(f, w)) for w in lattice.payloads])
    action = GLatticeAction(rep.group, lattice, table)
    report = validate_glattice(action)
    if not report.ok:
        raise NotProjective(f"induced action failed validation: {report}")
    return action


def coordinatize(phi):
    """A semilinear automorphism inducing a given lattice automorphism.

    Scans SGL(V) in enumeration order and returns the first map whose
    action on every subspace matches phi; candidates are compared on
    low-dimensional subspaces first so mismatches exit early.  Raises
    NotCoordinatizable when the scan is exhausted.
    """
    lattice = phi.lattice
    if not isinstance(lattice, SubspaceLattice):
        raise NotCoordinatizable("lattice elements carry no coordinates")
    space = lattice.space
    # proper nonzero subspaces, cheapest (lowest-dimensional) first
    targets = [
        (w, lattice.payloads[phi(i)])
        for i, w in sorted(enumerate(lattice.payloads), key=lambda iw: iw[1].dim)
        if 0 < w.dim < space.dim
    ]
    for f in iter_semilinear_automorphisms(space):
        if all(map_subspace(f, w) == target for w, target in targets):
            return f
    raise NotCoordinatizable(
        "no semilinear automorphism induces this lattice automorphism"
    )


def rep_from_glattice(action):
    """Pull a lattice action on L(V) back to a representation on V.

    Each group element's lattice automorphism is coordinatized
    independently; the resulting family is then checked to (a) induce
    the original table exactly and (b) satisfy the projective law via
    cocycle extraction.
    """
    lattice = action.lattice
    if not isinstance(lattice, SubspaceLattice):
        raise NotCoordinatizable("action is not on a coordinatized lattice")
    report = validate_glattice(action)
    if not report.ok:
        raise NotProjective(f"not a valid action: {report}")
    maps = {}
    for g in range(action.group.order):
        phi = LatticeAutomorphism(lattice, action.table[g])
        maps[g] = coordinatize(phi)
    rep = SemilinearProjectiveRep(action.group, lattice.space, maps)
    back = induced_glattice(rep, lattice)
    if back.table != action.table:
        raise NotCoordinatizable("coordinatized family induces a different action")
    extract_cocycle(rep)  # raises if the family is not projective
    return rep


@dataclass
class RepEquivalence:
    """A witness eta with rho2(g) = eta(g) * rho1(g) for all g."""

    eta: dict


def rep_equivalence(rep1, rep2):
    """Find eta making two representations equivalent, or return None.

    eta(g) is solved from one basis vector and then verified on the
    whole matrix, so a returned witness is always exact.
    """
    if rep1.group != rep2.group or rep1.space != rep2.space:
        raise SpaceMismatch("representations live on different groups or spaces")
    eta = {}
    for g in range(rep1.group.order):
        f1, f2 = rep1.maps[g], rep2.maps[g]
        if f1.theta != f2.theta:
            return None
        probe = rep1.space.basis_vector(0)
        scalar = _scalar_between(f2.apply(probe), f1.apply(probe))
        if scalar is None or scalar.is_zero():
            return None
        scaled = f1.scale(scalar)
        if scaled.matrix != f2.matrix:
            return None
        eta[g] = scalar
    return RepEquivalence(eta)


def same_induced_lattice(rep1, rep2, lattice=None):
    """Whether two representations induce identical subspace actions."""
    if lattice is None:
        lattice = enumerate_subspaces(rep1.space)
    return induced_glattice(rep1, lattice).table == induced_glattice(rep2, lattice).table

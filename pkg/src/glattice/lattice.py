"""Finite lattices, their automorphisms, and lattices acted on by a group.

A lattice is stored as an order matrix plus meet/join tables.  The
tables are redundant with the order and are cross-validated at
construction: meets and joins are recomputed as true greatest-lower /
least-upper bounds (via down-set/up-set bitmasks, so validation is
quadratic), and any supplied tables must agree.

An action of a group G on a lattice L is a |G| x |L| index table.  The
five compatibility axioms an action must satisfy are

  (1) g(hx) = (gh)x          (2) ex = x
  (3) x <= y  iff  gx <= gy
  (4) g(x ^ y) = gx ^ gy     (5) g(x v y) = gx v gy

and each has its own checker so violations can be pinpointed with a
witness.  Note that for an honestly validated lattice, (4) and (5) are
consequences of (1)-(3); they are still checked independently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    NoJoin,
    NoMeet,
    NotGSet,
    NotHomomorphism,
    NotLatticeAutomorphism,
    NotPartialOrder,
    ShapeMismatch,
    TableMismatch,
    TooLarge,
)

_EXHAUSTIVE_TABLE_LAW_LIMIT = 128
_AUT_SEARCH_LIMIT = 40
_POWERSET_LIMIT = 16


class FiniteLattice:
    """A finite lattice with explicit order, meet and join tables."""

    def __init__(self, leq, meet=None, join=None, payloads=None, labels=None):
        m = len(leq)
        if m == 0:
            raise NotPartialOrder("empty carrier")
        for row in leq:
            if len(row) != m:
                raise ShapeMismatch("leq matrix is not square")
        leq = tuple(tuple(bool(v) for v in row) for row in leq)

        # down[x] = bitmask of {y : y <= x}, up[x] = bitmask of {y : x <= y}
        down = [0] * m
        up = [0] * m
        for y in range(m):
            for x in range(m):
                if leq[y][x]:
                    down[x] |= 1 << y
                    up[y] |= 1 << x

        for x in range(m):
            if not leq[x][x]:
                raise NotPartialOrder(f"not reflexive at {x}", witness=(x,))
        for x in range(m):
            for y in range(m):
                if x != y and leq[x][y] and leq[y][x]:
                    raise NotPartialOrder(f"not antisymmetric at ({x},{y})", witness=(x, y))
                if leq[x][y] and down[x] & ~down[y]:
                    z = (down[x] & ~down[y]).bit_length() - 1
                    raise NotPartialOrder(
                        f"not transitive: {z}<={x}<={y} but not {z}<={y}",
                        witness=(z, x, y),
                    )

        by_down = {down[x]: x for x in range(m)}
        by_up = {up[x]: x for x in range(m)}
        computed_meet = []
        computed_join = []
        for x in range(m):
            meet_row = []
            join_row = []
            for y in range(m):
                lb = down[x] & down[y]
                z = by_down.get(lb)
                if z is None:
                    raise NoMeet(f"elements {x},{y} have no meet", witness=(x, y))
                meet_row.append(z)
                ub = up[x] & up[y]
                z = by_up.get(ub)
                if z is None:
                    raise NoJoin(f"elements {x},{y} have no join", witness=(x, y))
                join_row.append(z)
            computed_meet.append(meet_row)
            computed_join.append(join_row)

        for given, computed, name in ((meet, computed_meet, "meet"), (join, computed_join, "join")):
            if given is not None:
                given = [list(row) for row in given]
                if given != computed:
                    for x in range(m):
                        for y in range(m):
                            if given[x][y] != computed[x][y]:
                                raise TableMismatch(
                                    f"{name}[{x}][{y}] = {given[x][y]}, "
                                    f"but the true bound is {computed[x][y]}",
                                    witness=(x, y),
                                )

        self.size = m
        self.leq = leq
        self.meet = tuple(tuple(row) for row in computed_meet)
        self.join = tuple(tuple(row) for row in computed_join)
        self.down_masks = tuple(down)
        self.up_masks = tuple(up)
        self.payloads = tuple(payloads) if payloads is not None else tuple(range(m))
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(m))
        if m <= _EXHAUSTIVE_TABLE_LAW_LIMIT:
            self._check_table_laws()

    def _check_table_laws(self):
        rng = range(self.size)
        meet, join = self.meet, self.join
        for x in rng:
            for y in rng:
                if meet[x][join[x][y]] != x or join[x][meet[x][y]] != x:
                    raise TableMismatch(f"absorption fails at ({x},{y})", witness=(x, y))
        for x in rng:
            for y in rng:
                mxy, jxy = meet[x][y], join[x][y]
                for z in rng:
                    if meet[mxy][z] != meet[x][meet[y][z]]:
                        raise TableMismatch(
                            f"meet not associative at ({x},{y},{z})", witness=(x, y, z)
                        )
                    if join[jxy][z] != join[x][join[y][z]]:
                        raise TableMismatch(
                            f"join not associative at ({x},{y},{z})", witness=(x, y, z)
                        )

    @property
    def bottom(self):
        down = self.down_masks
        return min(range(self.size), key=lambda x: bin(down[x]).count("1"))

    @property
    def top(self):
        up = self.up_masks
        return min(range(self.size), key=lambda x: bin(up[x]).count("1"))

    def covers(self):
        """Pairs (x, y) with y covering x (the Hasse diagram edges)."""
        out = []
        for x in range(self.size):
            for y in range(self.size):
                if x == y or not self.leq[x][y]:
                    continue
                between = self.up_masks[x] & self.down_masks[y] & ~(1 << x) & ~(1 << y)
                if between == 0:
                    out.append((x, y))
        return out

    def height(self, x):
        """Length of the longest chain from the bottom up to x."""
        order = sorted(range(self.size), key=lambda z: bin(self.down_masks[z]).count("1"))
        h = {}
        for z in order:
            below = [h[w] for w in range(self.size) if self.leq[w][z] and w != z]
            h[z] = 1 + max(below) if below else 0
        return h[x]

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FiniteLattice(size={self.size})"


def validate_lattice(leq, meet=None, join=None, payloads=None, labels=None):
    """Check a candidate order/table bundle and return the lattice.

    Raises NotPartialOrder / NoMeet / NoJoin / TableMismatch with a
    witness naming the first offending elements.
    """
    return FiniteLattice(leq, meet=meet, join=join, payloads=payloads, labels=labels)


def chain_lattice(m):
    return FiniteLattice([[i <= j for j in range(m)] for i in range(m)])


def boolean_lattice(num_atoms):
    """The lattice of subsets of {0..num_atoms-1}; element i is bitmask i."""
    m = 1 << num_atoms
    leq = [[(i & j) == i for j in range(m)] for i in range(m)]
    payloads = [tuple(b for b in range(num_atoms) if i >> b & 1) for i in range(m)]
    labels = ["{" + ",".join(str(b) for b in payload) + "}" for payload in payloads]
    return FiniteLattice(leq, payloads=payloads, labels=labels)


# ---------------------------------------------------------------------------
# automorphisms


class LatticeAutomorphism:
    """An order-automorphism of a finite lattice, stored as a permutation."""

    __slots__ = ("lattice", "perm")

    def __init__(self, lattice, perm):
        perm = tuple(perm)
        if sorted(perm) != list(range(lattice.size)):
            raise NotLatticeAutomorphism("not a permutation of the carrier")
        for x in range(lattice.size):
            for y in range(lattice.size):
                if lattice.leq[x][y] != lattice.leq[perm[x]][perm[y]]:
                    raise NotLatticeAutomorphism(
                        f"order not preserved at ({x},{y})", witness=(x, y)
                    )
        self.lattice = lattice
        self.perm = perm

    def __call__(self, x):
        return self.perm[x]

    def compose(self, other):
        """self after other."""
        if self.lattice is not other.lattice:
            raise ShapeMismatch("automorphisms of different lattices")
        return LatticeAutomorphism(self.lattice, tuple(self.perm[other.perm[x]] for x in range(self.lattice.size)))

    def inverse(self):
        inv = [0] * self.lattice.size
        for x, y in enumerate(self.perm):
            inv[y] = x
        return LatticeAutomorphism(self.lattice, inv)

    def is_identity(self):
        return all(self.perm[x] == x for x in range(self.lattice.size))

    def __eq__(self, other):
        return (
            isinstance(other, LatticeAutomorphism)
            and self.lattice is other.lattice
            and self.perm == other.perm
        )

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        return f"LatticeAutomorphism{self.perm}"


def identity_automorphism(lattice):
    return LatticeAutomorphism(lattice, range(lattice.size))


def _refine_signatures(lattice):
    m = lattice.size
    covers = lattice.covers()
    lower = [[] for _ in range(m)]
    upper = [[] for _ in range(m)]
    for x, y in covers:
        upper[x].append(y)
        lower[y].append(x)
    sig = [
        (
            bin(lattice.down_masks[x]).count("1"),
            bin(lattice.up_masks[x]).count("1"),
            len(lower[x]),
            len(upper[x]),
        )
        for x in range(m)
    ]
    for _ in range(3):
        canon = {s: i for i, s in enumerate(sorted(set(sig)))}
        coded = [canon[s] for s in sig]
        sig = [
            (
                coded[x],
                tuple(sorted(coded[y] for y in lower[x])),
                tuple(sorted(coded[y] for y in upper[x])),
            )
            for x in range(m)
        ]
    canon = {s: i for i, s in enumerate(sorted(set(sig)))}
    return [canon[s] for s in sig]


def lattice_automorphism_group(lattice):
    """Every order-automorphism, by backtracking over signature classes.

    The search prunes with an iterated degree/height refinement, so the
    practical limit (enforced at 40 elements) is comfortable for the
    subspace and subgroup lattices this package builds.
    """
    if lattice.size > _AUT_SEARCH_LIMIT:
        raise TooLarge(f"automorphism search capped at {_AUT_SEARCH_LIMIT} elements")
    m = lattice.size
    sig = _refine_signatures(lattice)
    classes = {}
    for x in range(m):
        classes.setdefault(sig[x], []).append(x)
    order = sorted(range(m), key=lambda x: (len(classes[sig[x]]), x))
    leq = lattice.leq
    found = []
    image = [None] * m
    used = [False] * m

    def backtrack(i):
        if i == m:
            found.append(LatticeAutomorphism(lattice, list(image)))
            return
        x = order[i]
        for y in classes[sig[x]]:
            if used[y]:
                continue
            ok = True
            for j in range(i):
                z = order[j]
                if leq[x][z] != leq[y][image[z]] or leq[z][x] != leq[image[z]][y]:
                    ok = False
                    break
            if ok:
                image[x] = y
                used[y] = True
                backtrack(i + 1)
                image[x] = None
                used[y] = False

    backtrack(0)
    found.sort(key=lambda a: a.perm)
    return found


# ---------------------------------------------------------------------------
# group actions on lattices


class GLatticeAction:
    """A group action on a lattice, as an explicit |G| x |L| table."""

    __slots__ = ("group", "lattice", "table")

    def __init__(self, group, lattice, table):
        if len(table) != group.order:
            raise ShapeMismatch("action table must have one row per group element")
        for row in table:
            if len(row) != lattice.size:
                raise ShapeMismatch("action row length differs from lattice size")
            for entry in row:
                if not isinstance(entry, int) or not 0 <= entry < lattice.size:
                    raise ShapeMismatch(f"action entry {entry!r} out of range")
        self.group = group
        self.lattice = lattice
        self.table = tuple(tuple(row) for row in table)

    def apply(self, g, x):
        return self.table[g][x]

    def __eq__(self, other):
        return (
            isinstance(other, GLatticeAction)
            and self.group == other.group
            and self.table == other.table
        )

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"GLatticeAction(|G|={self.group.order}, |L|={self.lattice.size})"


@dataclass
class ActionReport:
    ok: bool
    axiom: int | None = None
    witness: tuple = ()
    message: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "pass"
        return f"axiom ({self.axiom}) fails: {self.message} witness={self.witness}"


def _axiom1(action):
    table, group = action.table, action.group
    for g in range(group.order):
        for h in range(group.order):
            gh = group.cayley[g][h]
            for x in range(action.lattice.size):
                if table[g][table[h][x]] != table[gh][x]:
                    return (g, h, x)
    return None


def _axiom2(action):
    for x in range(action.lattice.size):
        if action.table[0][x] != x:
            return (0, x)
    return None


def _axiom3(action):
    leq = action.lattice.leq
    for g in range(action.group.order):
        row = action.table[g]
        for x in range(action.lattice.size):
            for y in range(action.lattice.size):
                if leq[x][y] != leq[row[x]][row[y]]:
                    return (g, x, y)
    return None


def _axiom4(action):
    meet = action.lattice.meet
    for g in range(action.group.order):
        row = action.table[g]
        for x in range(action.lattice.size):
            for y in range(action.lattice.size):
                if row[meet[x][y]] != meet[row[x]][row[y]]:
                    return (g, x, y)
    return None


def _axiom5(action):
    join = action.lattice.join
    for g in range(action.group.order):
        row = action.table[g]
        for x in range(action.lattice.size):
            for y in range(action.lattice.size):
                if row[join[x][y]] != join[row[x]][row[y]]:
                    return (g, x, y)
    return None


AXIOM_CHECKERS = {1: _axiom1, 2: _axiom2, 3: _axiom3, 4: _axiom4, 5: _axiom5}

_AXIOM_TEXT = {
    1: "g(hx) = (gh)x",
    2: "ex = x",
    3: "x <= y iff gx <= gy",
    4: "g(x^y) = gx^gy",
    5: "g(xvy) = gxvgy",
}


def check_axiom(action, k):
    """Witness of a violation of axiom k, or None if it holds."""
    return AXIOM_CHECKERS[k](action)


def validate_glattice(action):
    """Check all five action axioms; report the first that fails."""
    for k in (1, 2, 3, 4, 5):
        witness = AXIOM_CHECKERS[k](action)
        if witness is not None:
            return ActionReport(False, axiom=k, witness=witness, message=_AXIOM_TEXT[k])
    return ActionReport(True)


def trivial_action(group, lattice):
    return GLatticeAction(group, lattice, [list(range(lattice.size))] * group.order)


def action_from_homomorphism(group, lattice, rho):
    """Turn a homomorphism g -> Aut(L) into an action table.

    ``rho`` maps element indices to LatticeAutomorphisms.  The
    homomorphism property is verified before the table is built.
    """
    if not rho[0].is_identity():
        raise NotHomomorphism("identity must map to the identity automorphism", witness=(0,))
    for g in range(group.order):
        for h in range(group.order):
            if rho[g].compose(rho[h]) != rho[group.cayley[g][h]]:
                raise NotHomomorphism(f"rho({g})rho({h}) != rho({g}*{h})", witness=(g, h))
    table = [[rho[g](x) for x in range(lattice.size)] for g in range(group.order)]
    action = GLatticeAction(group, lattice, table)
    report = validate_glattice(action)
    if not report.ok:
        raise NotHomomorphism(str(report), witness=report.witness)
    return action


def homomorphism_from_action(action):
    """Recover the automorphism family g -> (x -> gx) from an action."""
    report = validate_glattice(action)
    if not report.ok:
        raise ShapeMismatch(f"not a valid action: {report}", witness=report.witness)
    return {
        g: LatticeAutomorphism(action.lattice, action.table[g])
        for g in range(action.group.order)
    }


def powerset_glattice(group, gset_table):
    """Lift a finite G-set to the action on its Boolean lattice of subsets.

    ``gset_table[g][x]`` is the image point of x under g.  Subsets are
    indexed by bitmask, so element i of the lattice is the subset with
    characteristic bits i.
    """
    if len(gset_table) != group.order:
        raise ShapeMismatch("G-set table needs one row per group element")
    npoints = len(gset_table[0])
    if npoints > _POWERSET_LIMIT:
        raise TooLarge(f"power-set lattice capped at {_POWERSET_LIMIT} points")
    for row in gset_table:
        if len(row) != npoints:
            raise ShapeMismatch("ragged G-set table")
        if sorted(row) != list(range(npoints)):
            raise NotGSet("a group element must act as a bijection on points")
    for x in range(npoints):
        if gset_table[0][x] != x:
            raise NotGSet(f"identity moves point {x}", witness=(x,))
    for g in range(group.order):
        for h in range(group.order):
            gh = group.cayley[g][h]
            for x in range(npoints):
                if gset_table[g][gset_table[h][x]] != gset_table[gh][x]:
                    raise NotGSet(f"g(hx) != (gh)x at ({g},{h},{x})", witness=(g, h, x))
    lattice = boolean_lattice(npoints)

    def act_mask(g, mask):
        out = 0
        for x in range(npoints):
            if mask >> x & 1:
                out |= 1 << gset_table[g][x]
        return out

    table = [[act_mask(g, mask) for mask in range(lattice.size)] for g in range(group.order)]
    action = GLatticeAction(group, lattice, table)
    report = validate_glattice(action)
    if not report.ok:
        raise NotGSet(f"lifted action failed validation: {report}")
    return action


def orbits(action):
    """Orbit partition of the lattice elements, sorted by least member."""
    seen = [False] * action.lattice.size
    out = []
    for x in range(action.lattice.size):
        if seen[x]:
            continue
        orbit = set()
        queue = [x]
        while queue:
            y = queue.pop()
            if y in orbit:
                continue
            orbit.add(y)
            for g in range(action.group.order):
                queue.append(action.table[g][y])
        for y in orbit:
            seen[y] = True
        out.append(sorted(orbit))
    out.sort(key=lambda orb: orb[0])
    return out


def fixed_points(action):
    return [
        x
        for x in range(action.lattice.size)
        if all(action.table[g][x] == x for g in range(action.group.order))
    ]


def orbit_report(action):
    """JSON-ready orbit summary: {"orbits": [[...]], "fixed": [...]}."""
    return {"orbits": orbits(action), "fixed": fixed_points(action)}


_DOT_PALETTE = (
    "#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6",
    "#ffff99", "#1f78b4", "#33a02c", "#e31a1c", "#ff7f00",
    "#6a3d9a", "#b15928",
)


def hasse_dot(lattice, action=None, name="hasse"):
    """DOT source for the Hasse diagram (cover relation only).

    When an action is given, nodes are filled with one color per orbit.
    Output is deterministic: nodes in index order, edges sorted.
    """
    lines = [f"digraph {name} {{", "  rankdir=BT;", '  node [shape=box, style=filled, fillcolor=white];']
    color = {}
    if action is not None:
        for i, orbit in enumerate(orbits(action)):
            for x in orbit:
                color[x] = _DOT_PALETTE[i % len(_DOT_PALETTE)]
    for x in range(lattice.size):
        label = str(lattice.labels[x]).replace('"', '\\"')
        attrs = f'label="{label}"'
        if x in color:
            attrs += f', fillcolor="{color[x]}"'
        lines.append(f"  n{x} [{attrs}];")
    for x, y in sorted(lattice.covers()):
        lines.append(f"  n{x} -> n{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"

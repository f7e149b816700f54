"""Exact permutation groups at small degree.

Groups are stored as fully enumerated element sets (every group handled
here has order at most |S8| = 40320, so a base-and-strong-generators
structure would be overkill).  The module provides right-coset actions,
derived subgroups, normal cores, the subset T of a subgroup whose
elements fix only the distinguished coset, and the combined generation
test built from T and the derived subgroup, together with Frobenius and
2-transitivity predicates.

Composition convention: ``a * b`` means "apply a, then b", so that a
right coset ``H*s`` moved by ``g`` lands on ``H*(s*g)``.  Permutations
are 0-indexed internally; cycle-notation text I/O is 1-indexed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

DEFAULT_CLOSURE_CEILING = 10**6


class GroupTooLargeError(RuntimeError):
    """Raised when a closure would exceed the configured element ceiling."""


@dataclass(frozen=True, order=True)
class Perm:
    """A permutation of {0, ..., degree-1}, stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise ValueError("degree must be positive")
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(degree: int) -> "Perm":
        return Perm(tuple(range(degree)))

    @staticmethod
    def from_cycles(degree: int, cycles: Iterable[Iterable[int]]) -> "Perm":
        """Build a permutation from disjoint 0-indexed cycles."""
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            cycle = list(cycle)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                if a in seen:
                    raise ValueError(f"point {a} repeated across cycles")
                seen.add(a)
                images[a] = b
        return Perm(tuple(images))

    def __mul__(self, other: "Perm") -> "Perm":
        # apply self first, then other
        a, b = self.images, other.images
        return Perm(tuple(b[a[i]] for i in range(len(a))))

    def __pow__(self, k: int) -> "Perm":
        n = self.degree
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.images) if i == j)

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its least point, sorted by it."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cur, cyc = start, []
            while not seen[cur]:
                seen[cur] = True
                cyc.append(cur)
                cur = self.images[cur]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        """1-indexed cycle notation, '()' for the identity."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycs)

    def __repr__(self) -> str:
        return f"Perm{self.images!r}"


def parse_perm(text: str, degree: int) -> Perm:
    """Parse 1-indexed cycle notation like ``(1 2)(3 4)``; '()' is identity."""
    text = text.strip()
    if text in ("()", "", "1", "id"):
        return Perm.identity(degree)
    if not re.fullmatch(r"(\(\s*\d+(?:[ ,]+\d+)*\s*\))+", text):
        raise ValueError(f"bad cycle notation: {text!r}")
    cycles = []
    for body in re.findall(r"\(([^()]*)\)", text):
        pts = [int(tok) - 1 for tok in re.split(r"[ ,]+", body.strip()) if tok]
        for p in pts:
            if not 0 <= p < degree:
                raise ValueError(f"point {p + 1} out of range for degree {degree}")
        if len(pts) > 1:
            cycles.append(pts)
    return Perm.from_cycles(degree, cycles)


class PermGroup:
    """A finite permutation group with its full element set enumerated."""

    __slots__ = ("degree", "generators", "elements", "_sorted")

    def __init__(self, degree: int, generators: tuple[Perm, ...], elements: frozenset[Perm]):
        self.degree = degree
        self.generators = generators
        self.elements = elements
        self._sorted: Optional[tuple[Perm, ...]] = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def sorted_elements(self) -> tuple[Perm, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self.elements))
        return self._sorted

    def __contains__(self, p: Perm) -> bool:
        return p in self.elements

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PermGroup)
            and self.degree == other.degree
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.elements))

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self.elements <= other.elements

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def is_transitive(self) -> bool:
        """Transitivity of the natural action on {0, ..., degree-1}."""
        orbit = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = g(x)
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        return len(orbit) == self.degree

    def __repr__(self) -> str:
        return f"<PermGroup degree={self.degree} order={self.order}>"


def _close(degree: int, gens: list[tuple[int, ...]], ceiling: int) -> set[tuple[int, ...]]:
    """Closure of generator image-tuples under composition (raw tuples)."""
    ident = tuple(range(degree))
    els = {ident}
    frontier = [ident]
    rng = range(degree)
    while frontier:
        new = []
        for b in frontier:
            for a in gens:
                c = tuple(b[a[i]] for i in rng)  # a then b; order irrelevant for the set
                if c not in els:
                    els.add(c)
                    if len(els) > ceiling:
                        raise GroupTooLargeError(
                            f"group too large: closure exceeds ceiling {ceiling}"
                        )
                    new.append(c)
        frontier = new
    return els


def group_closure(
    degree: int, generators: Iterable[Perm], ceiling: int = DEFAULT_CLOSURE_CEILING
) -> PermGroup:
    """Smallest group containing the generators, as an explicit element set.

    A finite closed subset of a symmetric group containing the identity
    is automatically closed under inversion, so plain composition
    closure suffices.  Rejects degree < 1 and closures past `ceiling`.
    """
    if degree < 1:
        raise ValueError("degree must be a positive integer")
    gens = tuple(generators)
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator degree {g.degree} != {degree}")
    raw = _close(degree, [g.images for g in gens], ceiling)
    return PermGroup(degree, gens, frozenset(Perm(t) for t in raw))


def subgroup_from_elements(degree: int, elements: Iterable[Perm]) -> PermGroup:
    """Wrap a set already closed under the group operations, finding a
    small generating set greedily (lexicographic element order)."""
    els = frozenset(elements)
    gens: list[Perm] = []
    cur = {Perm.identity(degree).images}
    for x in sorted(els):
        if x.images not in cur:
            gens.append(x)
            cur = _close(degree, [g.images for g in gens], len(els))
            if len(cur) == len(els):
                break
    assert len(cur) == len(els), "element set was not closed"
    return PermGroup(degree, tuple(gens), els)


def generated_subgroup(
    degree: int,
    elements: Iterable[Perm],
    seed_generators: Iterable[Perm] = (),
    ceiling: int = DEFAULT_CLOSURE_CEILING,
) -> PermGroup:
    """Subgroup generated by `elements` (and `seed_generators`), adding
    generators incrementally so large redundant generator sets stay cheap."""
    gens: list[Perm] = []
    cur = {Perm.identity(degree).images}
    for x in list(seed_generators) + sorted(set(elements)):
        if x.images not in cur:
            gens.append(x)
            cur = _close(degree, [g.images for g in gens], ceiling)
    return PermGroup(degree, tuple(gens), frozenset(Perm(t) for t in cur))


def point_stabilizer(group: PermGroup, point: int) -> PermGroup:
    """Stabilizer of a point in the natural action."""
    if not 0 <= point < group.degree:
        raise ValueError("point out of range")
    return subgroup_from_elements(
        group.degree, (g for g in group.elements if g(point) == point)
    )


class CosetAction:
    """The action of G on the right cosets of H by right multiplication.

    Cosets are indexed 0..[G:H]-1 in lexicographic order of their least
    element; each stored representative is that least element, so the
    representative of coset 0 (= H itself) is the identity.  Action rows
    are built lazily and cached.
    """

    __slots__ = ("group", "subgroup", "representatives", "_coset_of", "_rows")

    def __init__(self, group: PermGroup, subgroup: PermGroup):
        self.group = group
        self.subgroup = subgroup
        reps: list[Perm] = []
        coset_of: dict[Perm, int] = {}
        h_images = [h.images for h in subgroup.elements]
        n = group.degree
        rng = range(n)
        for s in group.sorted_elements():
            if s in coset_of:
                continue
            idx = len(reps)
            reps.append(s)
            si = s.images
            for h in h_images:
                coset_of[Perm(tuple(si[h[i]] for i in rng))] = idx  # h then s
        self.representatives = tuple(reps)
        self._coset_of = coset_of
        self._rows: dict[Perm, tuple[int, ...]] = {}

    @property
    def num_cosets(self) -> int:
        return len(self.representatives)

    def coset_index(self, g: Perm) -> int:
        """Index of the coset H*g."""
        return self._coset_of[g]

    def row(self, g: Perm) -> tuple[int, ...]:
        """Images of every coset index under right multiplication by g."""
        cached = self._rows.get(g)
        if cached is None:
            cached = tuple(self._coset_of[s * g] for s in self.representatives)
            self._rows[g] = cached
        return cached

    def act(self, index: int, g: Perm) -> int:
        """act(i, g) = index of H * (s_i * g)."""
        return self.row(g)[index]

    def perm_on_cosets(self, g: Perm) -> Perm:
        """The permutation of coset indices induced by g."""
        return Perm(self.row(g))


def coset_action(group: PermGroup, subgroup: PermGroup) -> CosetAction:
    """Right-coset action of `group` on the cosets of `subgroup`.

    Rejects subgroups that are not contained in the group.
    """
    if not subgroup.is_subgroup_of(group):
        raise ValueError("H is not a subgroup of G")
    return CosetAction(group, subgroup)


def cycle_structure(g: Perm, action: CosetAction) -> list[tuple[int, Perm]]:
    """Cycles of g on the coset space as (length, representative) pairs.

    Cycles are listed by their least coset index; the representative is
    the stored representative of that least coset, making the output
    reproducible.  Lengths sum to the number of cosets.
    """
    if g not in action.group:
        raise ValueError("element not in the acting group")
    row = action.row(g)
    seen = [False] * len(row)
    out = []
    for start in range(len(row)):
        if seen[start]:
            continue
        cur, length = start, 0
        while not seen[cur]:
            seen[cur] = True
            length += 1
            cur = row[cur]
        out.append((length, action.representatives[start]))
    return out


def _check_proper_subgroup(group: PermGroup, subgroup: PermGroup) -> None:
    if not subgroup.is_subgroup_of(group):
        raise ValueError("H is not a subgroup of G")
    if subgroup.order == group.order:
        raise ValueError("H = G is rejected: the fixed-coset condition is vacuous")


def compute_T(
    group: PermGroup, subgroup: PermGroup, action: Optional[CosetAction] = None
) -> frozenset[Perm]:
    """Elements of H whose only fixed coset is H itself.

    Computed by counting fixed points of each h in the coset action.
    `compute_T_conjugacy` is the independent characterization; the two
    must agree (a tested invariant).
    """
    _check_proper_subgroup(group, subgroup)
    if action is None:
        action = coset_action(group, subgroup)
    out = []
    for h in subgroup.elements:
        row = action.row(h)
        if sum(1 for i, j in enumerate(row) if i == j) == 1:
            # h in H always fixes coset 0 = H, so the unique fixed point is H
            out.append(h)
    return frozenset(out)


def compute_T_conjugacy(
    group: PermGroup, subgroup: PermGroup, action: Optional[CosetAction] = None
) -> frozenset[Perm]:
    """Same subset, via: h is excluded iff s*h*s^-1 lies in H for some s
    outside H.  Whether s*h*s^-1 is in H depends only on the coset H*s,
    so only the non-identity coset representatives need checking.
    """
    _check_proper_subgroup(group, subgroup)
    if action is None:
        action = coset_action(group, subgroup)
    out = []
    for h in subgroup.elements:
        excluded = False
        for s in action.representatives[1:]:
            if s * h * s.inverse() in subgroup.elements:
                excluded = True
                break
        if not excluded:
            out.append(h)
    return frozenset(out)


def derived_subgroup(group: PermGroup) -> PermGroup:
    """Commutator subgroup, as the normal closure in `group` of the
    commutators of its generators."""
    gens = group.generators
    comms = {
        a * b * a.inverse() * b.inverse() for a in gens for b in gens
    }
    comms.discard(Perm.identity(group.degree))
    sub = generated_subgroup(group.degree, comms)
    # normal closure: conjugate by generators until stable
    while True:
        extra = []
        for g in gens:
            ginv = g.inverse()
            for x in sub.generators:
                y = ginv * x * g
                if y not in sub.elements:
                    extra.append(y)
        if not extra:
            return sub
        sub = generated_subgroup(group.degree, extra, seed_generators=sub.generators)


def normal_core(group: PermGroup, subgroup: PermGroup) -> PermGroup:
    """Largest normal subgroup of G inside H, i.e. the intersection of
    all conjugates of H.  An element of H belongs iff every conjugate
    s*h*s^-1 stays in H, and that test only depends on the coset H*s."""
    if not subgroup.is_subgroup_of(group):
        raise ValueError("H is not a subgroup of G")
    action = CosetAction(group, subgroup)
    reps = action.representatives
    core = []
    for h in subgroup.elements:
        if all(s * h * s.inverse() in subgroup.elements for s in reps):
            core.append(h)
    return subgroup_from_elements(group.degree, core)


@dataclass(frozen=True)
class ConditionReport:
    """Witnesses for the generation test T != {} and H = <T, H'>.

    `holds` is precisely the conjunction of T_nonempty and
    `generated` coinciding with H.
    """

    T: frozenset[Perm]
    T_nonempty: bool
    generated: PermGroup
    holds: bool


def check_condition_2B(
    group: PermGroup, subgroup: PermGroup, action: Optional[CosetAction] = None
) -> ConditionReport:
    """Evaluate the generation criterion for the pair (G, H).

    Computes T, the derived subgroup H', and the subgroup they generate;
    holds() iff T is nonempty and <T, H'> is all of H.
    """
    if action is None:
        action = coset_action(group, subgroup)
    T = compute_T(group, subgroup, action)
    hprime = derived_subgroup(subgroup)
    generated = generated_subgroup(
        group.degree, T, seed_generators=hprime.generators
    )
    holds = bool(T) and generated.elements == subgroup.elements
    return ConditionReport(T=T, T_nonempty=bool(T), generated=generated, holds=holds)


def is_frobenius(group: PermGroup, action: CosetAction) -> bool:
    """Whether the action is a Frobenius action: no non-identity element
    fixes two points, and some non-identity element fixes one."""
    some_fixes_one = False
    ident = Perm.identity(group.degree)
    for g in group.elements:
        if g == ident:
            continue
        row = action.row(g)
        fixed = sum(1 for i, j in enumerate(row) if i == j)
        if fixed > 1:
            return False
        if fixed == 1:
            some_fixes_one = True
    return some_fixes_one


def is_2transitive(group: PermGroup, action: CosetAction) -> bool:
    """Transitivity on ordered pairs of distinct cosets."""
    n = action.num_cosets
    if n < 2:
        raise ValueError("2-transitivity needs at least 2 cosets")
    gen_rows = [action.row(g) for g in group.generators]
    start = (0, 1)
    orbit = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for pair in frontier:
            for row in gen_rows:
                img = (row[pair[0]], row[pair[1]])
                if img not in orbit:
                    orbit.add(img)
                    nxt.append(img)
        frontier = nxt
    return len(orbit) == n * (n - 1)


def action_image(action: CosetAction) -> tuple[PermGroup, dict[Perm, Perm]]:
    """The permutation group induced on coset indices, with the map
    g -> induced permutation.  Its kernel is the normal core of H."""
    hom = {g: action.perm_on_cosets(g) for g in action.group.elements}
    image = subgroup_from_elements(action.num_cosets, set(hom.values()))
    return image, hom


# ---------------------------------------------------------------------------
# Named families and the group-file text format


def symmetric_group(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return group_closure(1, [])
    gens = [Perm.from_cycles(n, [[0, 1]])]
    if n > 2:
        gens.append(Perm.from_cycles(n, [list(range(n))]))
    return group_closure(n, gens)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return group_closure(max(n, 1), [])
    gens = [Perm.from_cycles(n, [[0, 1, 2]])]
    if n > 3:
        cycle = list(range(n)) if n % 2 == 1 else list(range(1, n))
        gens.append(Perm.from_cycles(n, [cycle]))
    return group_closure(n, gens)


def cyclic_group(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    return group_closure(n, [Perm.from_cycles(n, [list(range(n))])])


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of the regular n-gon on n points (order 2n), n >= 3."""
    if n < 3:
        raise ValueError("dihedral group needs n >= 3")
    rot = Perm.from_cycles(n, [list(range(n))])
    refl = Perm(tuple((n - i) % n for i in range(n)))
    return group_closure(n, [rot, refl])


def frobenius_20() -> PermGroup:
    """The transitive group of order 20 on 5 points: a 5-cycle together
    with x -> 2x mod 5, a 4-cycle normalizing it."""
    five = Perm(tuple((i + 1) % 5 for i in range(5)))
    four = Perm(tuple((2 * i) % 5 for i in range(5)))
    return group_closure(5, [five, four])


_FAMILY_RE = re.compile(r"^([SADC])(\d+)$")


def family_group(token: str) -> PermGroup:
    """Resolve a symbolic family token: S<n>, A<n>, D<n>, C<n>, or F20."""
    token = token.strip()
    if token == "F20":
        return frobenius_20()
    m = _FAMILY_RE.match(token)
    if not m:
        raise ValueError(f"unknown group family token: {token!r}")
    letter, n = m.group(1), int(m.group(2))
    if letter == "S":
        return symmetric_group(n)
    if letter == "A":
        return alternating_group(n)
    if letter == "D":
        return dihedral_group(n)
    return cyclic_group(n)


def parse_group_file(text: str, ceiling: int = DEFAULT_CLOSURE_CEILING) -> PermGroup:
    """Parse the group-presentation text format: a ``degree=<n>`` line
    followed by one generator per line in 1-indexed cycle notation."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].replace(" ", "").startswith("degree="):
        raise ValueError("group file must start with a 'degree=<n>' line")
    try:
        degree = int(lines[0].split("=", 1)[1])
    except ValueError as exc:
        raise ValueError("bad degree line") from exc
    gens = [parse_perm(ln, degree) for ln in lines[1:]]
    return group_closure(degree, gens, ceiling=ceiling)

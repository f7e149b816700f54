"""Splitting behaviour read off a group element acting on cosets, and
the induced products of conjugates taken modulo the derived subgroup.

For a pair H <= G with coset space Omega, the cycle type of g on Omega
is the splitting pattern of an unramified prime whose associated
automorphism is g.  For each cycle length f the product of the
conjugates s_i g^f s_i^{-1} over cycles of that length lands in H; its
class in H/H' is well defined independently of the chosen
representatives, and those classes are what the arithmetic side
compares against.  Classes are computed in H/H' (the computable
refinement of the quotient the theory actually uses; equalities proved
here imply the coarser ones).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .abelian import AbelianGroupSNF
from .intlinalg import smith_normal_form
from .permgroup import CosetAction, Perm, PermGroup, cycle_structure, derived_subgroup


@dataclass(frozen=True, order=True)
class SplittingType:
    """A decomposition pattern: (residual degree f, ramification e) parts,
    sorted ascending.  At group level e is always 1."""

    parts: tuple[tuple[int, int], ...]

    @staticmethod
    def from_cycle_lengths(lengths) -> "SplittingType":
        return SplittingType(tuple(sorted((int(f), 1) for f in lengths)))

    @staticmethod
    def from_ef_parts(parts) -> "SplittingType":
        return SplittingType(tuple(sorted((int(f), int(e)) for f, e in parts)))

    @property
    def total(self) -> int:
        return sum(e * f for f, e in self.parts)

    @property
    def label(self) -> str:
        """Text form like ``1+2`` (ramified parts carry a caret: ``1^3``)."""
        return "+".join(
            str(f) if e == 1 else f"{f}^{e}" for f, e in self.parts
        )

    @staticmethod
    def from_label(label: str) -> "SplittingType":
        parts = []
        for tok in label.split("+"):
            if "^" in tok:
                f, e = tok.split("^")
                parts.append((int(f), int(e)))
            else:
                parts.append((int(tok), 1))
        return SplittingType(tuple(sorted(parts)))

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class AbelianizedElement:
    """An element of H/H' in invariant-factor coordinates."""

    coordinates: tuple[int, ...]


class Abelianization:
    """The quotient H/H' of a permutation group, with its projection.

    `group` is the quotient in invariant-factor form; `project` sends an
    element of H to its class.  The kernel of `project` is exactly H'.
    """

    def __init__(self, subgroup: PermGroup):
        self.source = subgroup
        self._hprime = derived_subgroup(subgroup)
        hp = self._hprime.sorted_elements()

        def coset_key(x: Perm) -> Perm:
            return min(x * d for d in hp)

        self._coset_key = coset_key
        gens = []
        seen_gens = set()
        for g in subgroup.generators:
            if not g.is_identity() and g not in seen_gens:
                gens.append(g)
                seen_gens.add(g)
        self._gens = gens
        k = len(gens)

        # Breadth-first walk of the quotient, recording one exponent
        # vector per coset; every revisit yields a relation among the
        # generator images, and those relations span the full relation
        # lattice.
        ident_key = coset_key(Perm.identity(subgroup.degree))
        vec: dict[Perm, tuple[int, ...]] = {ident_key: (0,) * k}
        relations: list[tuple[int, ...]] = []
        frontier = [ident_key]
        while frontier:
            nxt = []
            for x in frontier:
                vx = vec[x]
                for i, g in enumerate(gens):
                    y = coset_key(x * g)
                    w = tuple(v + (1 if j == i else 0) for j, v in enumerate(vx))
                    if y in vec:
                        rel = tuple(a - b for a, b in zip(w, vec[y]))
                        if any(rel):
                            relations.append(rel)
                    else:
                        vec[y] = w
                        nxt.append(y)
            frontier = nxt
        quotient_order = subgroup.order // self._hprime.order
        assert len(vec) == quotient_order
        self._vec = vec

        diag, _, V = smith_normal_form(relations, k)
        assert all(d != 0 for d in diag) and len(diag) == k, "quotient not finite"
        self._V = V
        self._kept = [i for i, d in enumerate(diag) if d > 1]
        self._mods = [diag[i] for i in self._kept]
        self.group = AbelianGroupSNF(tuple(self._mods))
        assert self.group.order == quotient_order

        self._class_cache: dict[Perm, AbelianizedElement] = {}

    def project(self, p: Perm) -> AbelianizedElement:
        """Class of p in H/H'; p must lie in H."""
        cached = self._class_cache.get(p)
        if cached is not None:
            return cached
        if p not in self.source.elements:
            raise ValueError("element not in the subgroup being abelianized")
        v = self._vec[self._coset_key(p)]
        k = len(self._gens)
        w = [sum(v[i] * self._V[i][j] for i in range(k)) for j in range(k)]
        result = AbelianizedElement(
            tuple(w[i] % d for i, d in zip(self._kept, self._mods))
        )
        self._class_cache[p] = result
        return result

    def identity_class(self) -> AbelianizedElement:
        return AbelianizedElement(self.group.identity())

    def combine(self, a: AbelianizedElement, b: AbelianizedElement) -> AbelianizedElement:
        return AbelianizedElement(self.group.add(a.coordinates, b.coordinates))


def abelianization(subgroup: PermGroup) -> Abelianization:
    """H/H' in invariant-factor form together with the projection map."""
    return Abelianization(subgroup)


def _cycles_with_reps(
    g: Perm, action: CosetAction, reps: Optional[Sequence[Perm]]
) -> list[tuple[int, Perm]]:
    if reps is None:
        return cycle_structure(g, action)
    if len(reps) != action.num_cosets:
        raise ValueError("need one representative per coset")
    for i, s in enumerate(reps):
        if action.coset_index(s) != i:
            raise ValueError(f"representative {i} lies in the wrong coset")
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
        out.append((length, reps[start]))
    return out


def splitting_from_frobenius(g: Perm, action: CosetAction) -> SplittingType:
    """Splitting pattern encoded by g: its cycle lengths on the cosets,
    each part unramified."""
    if g not in action.group:
        raise ValueError("element not in the acting group")
    return SplittingType.from_cycle_lengths(f for f, _ in cycle_structure(g, action))


def pi_class(
    g: Perm,
    f: int,
    action: CosetAction,
    ab: Abelianization,
    reps: Optional[Sequence[Perm]] = None,
) -> AbelianizedElement:
    """Class in H/H' of the product of s_i g^f s_i^{-1} over the cycles
    of g with length exactly f.

    An empty product (no cycle of length f) gives the identity class,
    matching the convention that a product over no maximal ideals is the
    whole ring.  Optionally uses caller-supplied coset representatives;
    the result provably does not depend on that choice.
    """
    if g not in action.group:
        raise ValueError("element not in the acting group")
    gf = g**f
    acc = ab.identity_class()
    for length, s in _cycles_with_reps(g, action, reps):
        if length != f:
            continue
        conj = s * gf * s.inverse()
        acc = ab.combine(acc, ab.project(conj))
    return acc


def total_class(
    g: Perm,
    action: CosetAction,
    ab: Abelianization,
    reps: Optional[Sequence[Perm]] = None,
) -> AbelianizedElement:
    """Class of the product of s_i g^{f_i} s_i^{-1} over all cycles (the
    transfer of g into H/H')."""
    if g not in action.group:
        raise ValueError("element not in the acting group")
    acc = ab.identity_class()
    for length, s in _cycles_with_reps(g, action, reps):
        conj = s * (g**length) * s.inverse()
        acc = ab.combine(acc, ab.project(conj))
    return acc


def chebotarev_densities(
    group: PermGroup, action: CosetAction
) -> dict[SplittingType, Fraction]:
    """Density of each splitting pattern: the proportion of group
    elements whose coset action has that cycle type."""
    counts: Counter[SplittingType] = Counter()
    for g in group.elements:
        counts[splitting_from_frobenius(g, action)] += 1
    order = group.order
    return {t: Fraction(c, order) for t, c in sorted(counts.items())}


def densities_to_json(densities: dict[SplittingType, Fraction]) -> list[dict]:
    """Serialize a density table with exact rationals as strings."""
    return [
        {"splitting_type": t.label, "density": str(d)}
        for t, d in sorted(densities.items())
    ]

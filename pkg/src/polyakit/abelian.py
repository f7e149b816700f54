"""Finite abelian groups in invariant-factor form, with subgroup lattices.

An `AbelianGroupSNF` is Z/d1 x ... x Z/dr with d1 | d2 | ... | dr, all
di > 1.  Elements are integer coordinate tuples reduced modulo the
invariant factors.  Subgroups are represented canonically by the HNF of
the lattice their generators span together with the relation lattice
diag(d1, ..., dr), which makes subgroup equality a matrix comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .intlinalg import hnf_rows, smith_normal_form


@dataclass
class AbelianGroupSNF:
    """Invariant-factor presentation of a finite abelian group.

    generator_classes maps external generator labels (e.g. prime-ideal
    labels) to their coordinate vectors.
    """

    invariant_factors: tuple[int, ...]
    generator_classes: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for d in self.invariant_factors:
            if d <= 1:
                raise ValueError("invariant factors must be > 1")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def identity(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def reduce(self, vec) -> tuple[int, ...]:
        return tuple(int(v) % d for v, d in zip(vec, self.invariant_factors))

    def add(self, a, b) -> tuple[int, ...]:
        return self.reduce(x + y for x, y in zip(a, b))

    def neg(self, a) -> tuple[int, ...]:
        return self.reduce(-x for x in a)

    def scale(self, a, k: int) -> tuple[int, ...]:
        return self.reduce(x * k for x in a)

    def subgroup(self, vectors) -> "Subgroup":
        return Subgroup.spanned_by(self, vectors)

    def full_subgroup(self) -> "Subgroup":
        basis = [[int(i == j) for j in range(self.rank)] for i in range(self.rank)]
        return Subgroup(self, hnf_rows(basis, self.rank))


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of an AbelianGroupSNF as a canonical coordinate lattice.

    `basis` is the HNF of the lattice in Z^rank spanned by the generator
    vectors together with diag(invariant factors); it always has full
    rank, and two subgroups are equal iff their bases are identical.
    """

    ambient: AbelianGroupSNF
    basis: tuple[tuple[int, ...], ...]

    @staticmethod
    def spanned_by(ambient: AbelianGroupSNF, vectors) -> "Subgroup":
        r = ambient.rank
        rows = [list(ambient.reduce(v)) for v in vectors]
        rows += [[ambient.invariant_factors[i] * int(i == j) for j in range(r)] for i in range(r)]
        return Subgroup(ambient, hnf_rows(rows, r))

    @property
    def order(self) -> int:
        det = 1
        for i, row in enumerate(self.basis):
            det *= row[i]
        return self.ambient.order // det

    def is_full(self) -> bool:
        return self.order == self.ambient.order

    def contains(self, vec) -> bool:
        from .intlinalg import lattice_contains

        return lattice_contains(self.basis, self.ambient.reduce(vec))

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        from .intlinalg import lattice_contains

        if self.ambient != other.ambient:
            return False
        return all(lattice_contains(other.basis, row) for row in self.basis)

    def structure(self) -> tuple[int, ...]:
        """Invariant factors of the subgroup itself.

        The subgroup is L / D where L is the basis lattice and D the
        relation lattice diag(d); expressing a basis of D over the basis
        of L and taking SNF gives the quotient structure.
        """
        r = self.ambient.rank
        if r == 0:
            return ()
        # rows of D in terms of basis rows: with B upper triangular,
        # column k of c*B only involves rows 0..k, so solve ascending.
        coords = []
        for i in range(r):
            v = [self.ambient.invariant_factors[i] * int(i == j) for j in range(r)]
            c = [0] * r
            for k in range(r):
                q, rem = divmod(v[k], self.basis[k][k])
                assert rem == 0, "relation lattice not inside subgroup lattice"
                c[k] = q
                if q:
                    v = [a - q * b for a, b in zip(v, self.basis[k])]
            assert all(a == 0 for a in v)
            coords.append(c)
        diag, _, _ = smith_normal_form(coords, r)
        return tuple(d for d in diag if d > 1)

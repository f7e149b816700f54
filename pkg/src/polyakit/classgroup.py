"""Class groups of cubic orders and the subgroups generated by the
products of same-norm maximal ideals.

The class group is presented on the factor base of primes below the
Minkowski bound.  Relations are harvested deterministically from three
sources: factorizations of rational primes, principality certificates
found by bounded search, and factorizations of the principal ideals of
the elements in a coordinate box.  The harvested lattice always yields
a group surjecting onto the true class group, so the result can only
err on the large side; the stability contract (doubling the harvest
budget must not change the invariant factors) is the guard, and when
every factor-base prime is certified principal the trivial answer is
exact with no heuristic at all.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .abelian import AbelianGroupSNF, Subgroup
from .cubicfield import (
    ClassGroupInconclusiveError,
    ExpressionBudgetExceededError,
    MaximalOrder,
    PrimeIdeal,
    SearchBudgetExceededError,
    element_valuation,
    factor_prime,
    is_principal,
    minkowski_bound,
    primes_up_to,
)
from .intlinalg import hnf_rows, smith_normal_form

DEFAULT_HARVEST_RADIUS = 4
MAX_HARVEST_RADIUS = 48
PROBE_RADIUS_FACTOR = 1.3
PROBE_MAX_CANDIDATES = 8000
EXPRESSION_MAX_SHELL = 16


@dataclass
class ClassGroupData:
    """Cl(K) in invariant-factor form plus the factor-base witnesses.

    `snf.generator_classes` maps each factor-base prime label to its
    class coordinates.  `certified_trivial` marks the exact path where
    every factor-base prime carried a principality certificate (then no
    stability heuristic was involved).
    """

    snf: AbelianGroupSNF
    fb: tuple[PrimeIdeal, ...]
    mb: Fraction
    budget: int
    certified_trivial: bool
    _V: list = field(default_factory=list, repr=False)
    _kept: list = field(default_factory=list, repr=False)
    _expr_cache: dict = field(default_factory=dict, repr=False)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.snf.invariant_factors

    @property
    def order(self) -> int:
        return self.snf.order

    def project_fb_vector(self, row) -> tuple[int, ...]:
        """Class coordinates of an exponent vector over the factor base."""
        k = len(self.fb)
        if not self.snf.invariant_factors:
            return ()
        w = [sum(row[i] * self._V[i][j] for i in range(k)) for j in range(k)]
        return self.snf.reduce(w[i] for i in self._kept)


def _box_elements(radius: int):
    """Nonzero integral-basis coordinate vectors with sup norm <= radius,
    one per sign pair (first nonzero coordinate positive), ascending."""
    for y2 in range(-radius, radius + 1):
        for y1 in range(-radius, radius + 1):
            for y0 in range(-radius, radius + 1):
                y = (y0, y1, y2)
                for c in (y2, y1, y0):
                    if c > 0:
                        break
                    if c < 0:
                        y = None
                        break
                if y is not None and y != (0, 0, 0):
                    yield y


def _factor_base(order: MaximalOrder) -> tuple[tuple[PrimeIdeal, ...], Fraction]:
    mb = minkowski_bound(order)
    mb_floor = mb.numerator // mb.denominator
    fb = []
    for p in primes_up_to(mb_floor):
        for prime in factor_prime(order, p):
            if prime.norm <= mb:
                fb.append(prime)
    fb.sort(key=lambda q: (q.p, q.f, q.hnf))
    return tuple(fb), mb


def _probe_certificates(order: MaximalOrder, fb, indices) -> dict[int, tuple]:
    """Bounded principality search for selected factor-base primes;
    misses and budget overruns simply yield no certificate."""
    out = {}
    for i in indices:
        try:
            gen = is_principal(
                order,
                fb[i].as_integral(),
                radius_factor=PROBE_RADIUS_FACTOR,
                max_candidates=PROBE_MAX_CANDIDATES,
            )
        except SearchBudgetExceededError:
            gen = None
        if gen is not None:
            out[i] = gen
    return out


def _harvest(order: MaximalOrder, fb, mb: Fraction, radius: int, probes) -> list[list[int]]:
    k = len(fb)
    index_of = {prime.hnf: i for i, prime in enumerate(fb)}
    rows: set[tuple[int, ...]] = set()

    # rational-prime relations: p*O = prod p_i^{e_i} with all factors in base
    mb_floor = mb.numerator // mb.denominator
    for p in primes_up_to(mb_floor):
        facs = factor_prime(order, p)
        if all(q.norm <= mb for q in facs):
            row = [0] * k
            for q in facs:
                row[index_of[q.hnf]] = q.e
            rows.add(tuple(row))

    # principality certificates
    for i in probes:
        row = [0] * k
        row[i] = 1
        rows.add(tuple(row))

    # principal ideals of box elements that factor over the base
    fb_rats = sorted({prime.p for prime in fb})
    over = {p: factor_prime(order, p) for p in fb_rats}
    for y in _box_elements(radius):
        n = abs(order.norm_omega(y))
        rem = n
        expo: dict[int, int] = {}
        for p in fb_rats:
            while rem % p == 0:
                rem //= p
                expo[p] = expo.get(p, 0) + 1
        if rem != 1:
            continue
        row = [0] * k
        ok = True
        for p, vp in expo.items():
            seen = 0
            for prime in over[p]:
                v = element_valuation(order, y, prime)
                if v:
                    idx = index_of.get(prime.hnf)
                    if idx is None:
                        ok = False  # a prime outside the base divides (y)
                        break
                    row[idx] = v
                    seen += v * prime.f
            if not ok or seen != vp:
                ok = False
                break
        if ok and any(row):
            rows.add(tuple(row))
    return [list(r) for r in sorted(rows)]


def _present(order: MaximalOrder, fb, mb, relations, certified, budget) -> Optional[ClassGroupData]:
    """Build the SNF presentation; None when relations leave free rank."""
    k = len(fb)
    if k == 0:
        snf = AbelianGroupSNF(())
        return ClassGroupData(snf, fb, mb, budget, certified_trivial=True)
    reduced = [list(r) for r in hnf_rows(relations, k)]
    diag, _, V = smith_normal_form(reduced, k)
    if len(diag) < k or any(d == 0 for d in diag):
        return None
    kept = [i for i, d in enumerate(diag) if d > 1]
    snf = AbelianGroupSNF(tuple(diag[i] for i in kept))
    data = ClassGroupData(
        snf,
        fb,
        mb,
        budget,
        certified_trivial=certified,
        _V=V,
        _kept=kept,
    )
    for i, prime in enumerate(fb):
        unit = [int(j == i) for j in range(k)]
        snf.generator_classes[prime.label] = data.project_fb_vector(unit)
    return data


def class_group(
    order: MaximalOrder,
    budget: Optional[int] = None,
    verify_stability: bool = True,
) -> ClassGroupData:
    """Class group on the factor base of primes below the Minkowski bound.

    The harvested relation lattice presents a group that surjects onto
    the true class group, so a trivial answer is exact
    (`certified_trivial`).  A nontrivial answer is re-derived at twice
    the budget (element-box radius) and, as a backstop, every prime
    whose class came out nontrivial gets a bounded principality probe;
    any disagreement escalates the budget, and running out of budget
    raises ClassGroupInconclusiveError.
    """
    fb, mb = _factor_base(order)
    if not fb:
        return _present(order, fb, mb, [], True, 0)

    base = budget if budget is not None else DEFAULT_HARVEST_RADIUS
    radius = base
    max_radius = max(MAX_HARVEST_RADIUS, base)
    probes: dict[int, tuple] = {}
    while radius <= max_radius:
        first = _present(
            order, fb, mb, _harvest(order, fb, mb, radius, probes), False, radius
        )
        if first is not None and first.snf.is_trivial():
            first.certified_trivial = True
            return first
        if not verify_stability:
            if first is None:
                raise ClassGroupInconclusiveError(
                    f"relations of deficient rank at budget {radius}"
                )
            return first
        second = _present(
            order, fb, mb, _harvest(order, fb, mb, 2 * radius, probes), False, radius
        )
        if second is not None and second.snf.is_trivial():
            second.certified_trivial = True
            return second
        if first is not None and second is not None:
            if first.snf.invariant_factors == second.snf.invariant_factors:
                # backstop: certificate search on the primes presented as
                # nontrivial; a hit means the harvest missed a relation
                suspicious = [
                    i
                    for i, prime in enumerate(fb)
                    if any(second.snf.generator_classes[prime.label])
                ]
                extra = _probe_certificates(order, fb, suspicious)
                if not extra:
                    return second
                probes.update(extra)
        radius *= 2
    raise ClassGroupInconclusiveError(
        f"class group not stable within max harvest radius {max_radius}"
    )


# ---------------------------------------------------------------------------
# Expressing arbitrary prime classes over the factor base


def prime_class_vector(
    order: MaximalOrder, data: ClassGroupData, prime: PrimeIdeal
) -> tuple[int, ...]:
    """Class coordinates of a prime ideal.

    Factor-base primes read their class off the presentation; any other
    prime is expressed by finding an element of it whose principal ideal
    is the prime times a factor-base-smooth cofactor.
    """
    if not data.snf.invariant_factors:
        return ()
    for i, q in enumerate(data.fb):
        if q.hnf == prime.hnf:
            unit = [int(j == i) for j in range(len(data.fb))]
            return data.project_fb_vector(unit)
    key = prime.hnf
    cached = data._expr_cache.get(key)
    if cached is not None:
        return cached

    k = len(data.fb)
    index_of = {q.hnf: i for i, q in enumerate(data.fb)}
    fb_rats = sorted({q.p for q in data.fb})
    rows = prime.hnf
    pnorm = prime.norm
    over_cache = {p: factor_prime(order, p) for p in fb_rats}
    if prime.p not in over_cache:
        over_cache[prime.p] = factor_prime(order, prime.p)

    def candidates(shell):
        # lattice points with max coefficient exactly `shell`
        rng = range(-shell, shell + 1)
        for c0 in rng:
            for c1 in rng:
                for c2 in rng:
                    if max(abs(c0), abs(c1), abs(c2)) != shell:
                        continue
                    yield (
                        c0 * rows[0][0] + c1 * rows[1][0] + c2 * rows[2][0],
                        c0 * rows[0][1] + c1 * rows[1][1] + c2 * rows[2][1],
                        c0 * rows[0][2] + c1 * rows[1][2] + c2 * rows[2][2],
                    )

    for shell in range(1, EXPRESSION_MAX_SHELL + 1):
        for y in candidates(shell):
            n = abs(order.norm_omega(y))
            if n == 0 or n % pnorm:
                continue
            rem = n
            rats = set(fb_rats) | {prime.p}
            expo: dict[int, int] = {}
            for p in sorted(rats):
                while rem % p == 0:
                    rem //= p
                    expo[p] = expo.get(p, 0) + 1
            if rem != 1:
                continue
            # exact factorization of (y) over the involved primes
            row = [0] * k
            v_target = None
            ok = True
            for p, vp in expo.items():
                seen = 0
                for q in over_cache[p]:
                    v = element_valuation(order, y, q)
                    if not v:
                        continue
                    seen += v * q.f
                    if q.hnf == prime.hnf:
                        v_target = v
                    else:
                        idx = index_of.get(q.hnf)
                        if idx is None:
                            ok = False
                            break
                        row[idx] = v
                if not ok or seen != vp:
                    ok = False
                    break
            if not ok or v_target != 1:
                continue
            # (y) = prime * prod fb^row  =>  [prime] = -sum row
            coords = data.snf.neg(data.project_fb_vector(row))
            data._expr_cache[key] = coords
            return coords
    raise ExpressionBudgetExceededError(
        f"could not express the class of the norm-{pnorm} prime over {prime.p} "
        f"within shell {EXPRESSION_MAX_SHELL}"
    )


def pi_class_map(
    order: MaximalOrder, data: ClassGroupData, p: int
) -> dict[int, tuple[int, ...]]:
    """Class coordinates of Pi_{p^f} for every residual degree f present
    above p, using the product identity p*O = prod Pi_{p^{f_i}} to avoid
    searches where it pins the answer down."""
    primes = factor_prime(order, p)
    fs = sorted(q.f for q in primes)
    by_f: dict[int, list[PrimeIdeal]] = {}
    for q in primes:
        by_f.setdefault(q.f, []).append(q)
    if not data.snf.invariant_factors:
        return {f: () for f in by_f}
    unramified = all(q.e == 1 for q in primes)
    if unramified and fs in ([1, 1, 1], [3]):
        # Pi equals p*O itself: principal
        return {f: data.snf.identity() for f in by_f}
    if unramified and fs == [1, 2]:
        v1 = prime_class_vector(order, data, by_f[1][0])
        return {1: v1, 2: data.snf.neg(v1)}
    out = {}
    for f, qs in by_f.items():
        acc = data.snf.identity()
        for q in qs:
            acc = data.snf.add(acc, prime_class_vector(order, data, q))
        out[f] = acc
    return out


@dataclass
class PolyaResult:
    """Subgroup of the class group generated by the selected split
    products, with the contributing (p, f) witnesses."""

    variant: str
    subgroup: Subgroup
    used: list[tuple[int, int, tuple[int, ...]]]
    processed_bound: int
    full_at: Optional[int]


def polya_group(
    order: MaximalOrder,
    cl: ClassGroupData,
    prime_bound: int = 200,
    variant: str = "all",
) -> PolyaResult:
    """Subgroup of Cl(K) generated by the classes of Pi_{p^f} for
    p <= prime_bound, filtered by variant:

    - "all": every prime, ramified included;
    - "nr": only p not dividing disc_K;
    - "nr1": additionally only f = 1.

    Processing stops early once the subgroup reaches the whole class
    group (more generators cannot change it); `full_at` records the
    prime at which that happened (0 when the class group is trivial).
    """
    if prime_bound < 2:
        raise ValueError("prime_bound must be >= 2")
    if variant not in ("all", "nr", "nr1"):
        raise ValueError(f"unknown variant {variant!r}")
    amb = cl.snf
    gens: list[tuple[int, ...]] = []
    sub = amb.subgroup(gens)
    used: list[tuple[int, int, tuple[int, ...]]] = []
    full_at: Optional[int] = 0 if sub.is_full() else None
    for p in primes_up_to(prime_bound):
        if full_at is not None:
            break
        ramified = order.disc_K % p == 0
        if variant in ("nr", "nr1") and ramified:
            continue
        classes = pi_class_map(order, cl, p)
        grew = False
        for f in sorted(classes):
            if variant == "nr1" and f != 1:
                continue
            coords = classes[f]
            if coords and any(coords):
                used.append((p, f, coords))
                gens.append(coords)
                grew = True
        if grew:
            sub = amb.subgroup(gens)
            if sub.is_full():
                full_at = p
    return PolyaResult(
        variant=variant,
        subgroup=sub,
        used=used,
        processed_bound=full_at if full_at is not None else prime_bound,
        full_at=full_at,
    )


# ---------------------------------------------------------------------------
# Reports


@dataclass
class PolyaReport:
    """JSON-ready record of the four groups and their equality flags.

    All fields are plain data so that serialization round-trips exactly.
    When an equality fails at the configured bound the status says
    "undetermined at bound B": generators are guaranteed to exist among
    all primes, not among primes up to any particular bound, so a miss
    is never a counterexample.
    """

    kind: str
    poly: str
    coefficients: list[int]
    disc_poly: int
    disc_K: int
    index: int
    galois: bool
    prime_bound: int
    minkowski_bound: str
    class_invariants: list[int]
    class_generators: dict[str, dict]
    variants: dict[str, dict]
    equalities: dict[str, bool]
    status: str
    harvest_budget: int
    certified_trivial: bool
    principal_witnesses: list[dict] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "poly": self.poly,
            "coefficients": list(self.coefficients),
            "disc_poly": self.disc_poly,
            "disc_K": self.disc_K,
            "index": self.index,
            "galois": self.galois,
            "prime_bound": self.prime_bound,
            "minkowski_bound": self.minkowski_bound,
            "class_invariants": list(self.class_invariants),
            "class_generators": self.class_generators,
            "variants": self.variants,
            "equalities": self.equalities,
            "status": self.status,
            "harvest_budget": self.harvest_budget,
            "certified_trivial": self.certified_trivial,
            "principal_witnesses": self.principal_witnesses,
        }

    @staticmethod
    def from_json_dict(d: dict) -> "PolyaReport":
        return PolyaReport(**d)


def _variant_payload(result: PolyaResult) -> dict:
    return {
        "order": result.subgroup.order,
        "invariant_factors": list(result.subgroup.structure()),
        "used": [[p, f, list(coords)] for p, f, coords in result.used],
        "processed_bound": result.processed_bound,
        "full_at": result.full_at,
    }


def verify_main_theorem(
    order: MaximalOrder,
    prime_bound: int = 200,
    budget: Optional[int] = None,
    verify_stability: bool = True,
) -> PolyaReport:
    """Compute Cl(K) and the three split-product subgroups and compare.

    Requires a non-Galois defining polynomial (the Galois case is
    covered by the direct principality sweep instead).
    """
    if order.poly.is_galois():
        raise ValueError("verify_main_theorem applies to non-Galois cubics")
    cl = class_group(order, budget=budget, verify_stability=verify_stability)
    po = polya_group(order, cl, prime_bound, "all")
    po_nr = polya_group(order, cl, prime_bound, "nr")
    po_nr1 = polya_group(order, cl, prime_bound, "nr1")
    eq = {
        "cl_eq_po": po.subgroup.is_full(),
        "po_eq_po_nr": po.subgroup == po_nr.subgroup,
        "po_nr_eq_po_nr1": po_nr.subgroup == po_nr1.subgroup,
    }
    eq["all_equal"] = all(eq.values())
    status = "verified" if eq["all_equal"] else f"undetermined at bound {prime_bound}"
    gens = {}
    for prime in cl.fb:
        gens[prime.label] = {
            "p": prime.p,
            "f": prime.f,
            "e": prime.e,
            "norm": prime.norm,
            "class": list(cl.snf.generator_classes.get(prime.label, ())),
        }
    return PolyaReport(
        kind="polya",
        poly=str(order.poly),
        coefficients=[order.poly.a2, order.poly.a1, order.poly.a0],
        disc_poly=order.poly.discriminant(),
        disc_K=order.disc_K,
        index=order.index,
        galois=False,
        prime_bound=prime_bound,
        minkowski_bound=str(cl.mb),
        class_invariants=list(cl.snf.invariant_factors),
        class_generators=gens,
        variants={
            "all": _variant_payload(po),
            "nr": _variant_payload(po_nr),
            "nr1": _variant_payload(po_nr1),
        },
        equalities=eq,
        status=status,
        harvest_budget=cl.budget,
        certified_trivial=cl.certified_trivial,
    )


@dataclass
class OstrowskiReport:
    """Direct principality sweep for a Galois cubic: every unramified
    split product should be principal, independent of any class-group
    computation."""

    kind: str
    poly: str
    coefficients: list[int]
    disc_poly: int
    disc_K: int
    index: int
    galois: bool
    prime_bound: int
    checked: int
    all_principal: bool
    witnesses: list[dict]

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "poly": self.poly,
            "coefficients": list(self.coefficients),
            "disc_poly": self.disc_poly,
            "disc_K": self.disc_K,
            "index": self.index,
            "galois": self.galois,
            "prime_bound": self.prime_bound,
            "checked": self.checked,
            "all_principal": self.all_principal,
            "witnesses": self.witnesses,
        }

    @staticmethod
    def from_json_dict(d: dict) -> "OstrowskiReport":
        return OstrowskiReport(**d)


def ostrowski_report(
    order: MaximalOrder, prime_bound: int = 200, max_candidates: int = 400000
) -> OstrowskiReport:
    from .cubicfield import ostrowski_check

    records = ostrowski_check(order, prime_bound, max_candidates=max_candidates)
    return OstrowskiReport(
        kind="ostrowski",
        poly=str(order.poly),
        coefficients=[order.poly.a2, order.poly.a1, order.poly.a0],
        disc_poly=order.poly.discriminant(),
        disc_K=order.disc_K,
        index=order.index,
        galois=True,
        prime_bound=prime_bound,
        checked=len(records),
        all_principal=all(r["principal"] for r in records),
        witnesses=records,
    )

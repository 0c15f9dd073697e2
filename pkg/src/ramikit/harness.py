"""Census building and the verification suites.

A census collects, for one knot group, a family of finite-index covers
(cyclic covers plus a low-index enumeration) and a pool of finite quotients
(exhaustive generator-image search into small symmetric groups, deduplicated
up to conjugacy).  ``run_suites`` then exercises every structural statement
of the toolkit on every applicable (cover, quotient, prime) combination and
reports a pass/fail matrix with counterexample payloads.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

from .cohomology import inflation_check, unramified_subspace
from .cosets import (CosetTable, CyclicCover, PermRep, low_index_subgroups,
                     todd_coxeter)
from .linalg import is_prime
from .perms import (Perm, canonical_action, compose, identity_perm,
                    inverse_perm, normal_subgroups)
from .presentations import KnotGroupData
from .ramification import (FiniteQuotient, InertiaDatum, factoring_check,
                           inertia_data, quotient_image_of_ramification,
                           ramification_report, restrict_quotient,
                           unramified_quotient)
from .rewriting import (SchreierData, SubgroupPresentation,
                        reidemeister_schreier, rewrite, schreier_transversal)
from .shadows import (MeridianClassNotPreserved, automorphism_candidates,
                      closure_shadow_suite, find_meridian_shift,
                      extend_isomorphism, inertia_transport_check,
                      product_kernel_table)
from .words import Word

HOM_SEARCH_BUDGET = 600_000
SHADOW_ORDER_CAP = 2000
LATTICE_ORDER_CAP = 400
TRANSPORT_ORDER_CAP = 24


@dataclass
class CoverData:
    """One finite-index cover with everything derived from it."""

    label: str
    table: CosetTable
    schreier: SchreierData
    spres: SubgroupPresentation
    inertia: tuple[InertiaDatum, ...]
    report: object  # RamificationReport


@dataclass
class Census:
    knot: KnotGroupData
    covers: list[CoverData]
    pool: list[FiniteQuotient]
    warnings: list[str] = field(default_factory=list)


def build_cover(knot: KnotGroupData, label: str, table: CosetTable) -> CoverData:
    sd = schreier_transversal(table)
    spres = reidemeister_schreier(knot.presentation, table, sd)
    inertia = inertia_data(table, sd, knot.meridian)
    report = ramification_report(label, table, sd, spres, inertia,
                                 knot.meridian, knot.longitude)
    return CoverData(label=label, table=table, schreier=sd, spres=spres,
                     inertia=inertia, report=report)


def _hom_pool(knot: KnotGroupData, max_sym_degree: int,
              warnings: list[str]) -> list[FiniteQuotient]:
    """Exhaustive homomorphism search into symmetric groups of degree up to
    ``max_sym_degree``, deduplicated by canonical form under conjugation
    (globally fixed points stripped, so padded copies of smaller-degree
    quotients collapse)."""
    from .cosets import _image_tuples

    pres = knot.presentation
    seen: set[tuple[Perm, ...]] = set()
    forms: list[tuple[Perm, ...]] = []
    for degree in range(1, max_sym_degree + 1):
        work = 1
        for _ in range(pres.n_generators):
            work *= _factorial(degree)
        if work > HOM_SEARCH_BUDGET:
            warnings.append(
                f"homomorphism search skipped degree {degree}: "
                f"{work} image tuples exceed the budget {HOM_SEARCH_BUDGET}")
            continue
        for images in _image_tuples(pres, degree):
            form = canonical_action(images, strip_fixed=True)
            if form not in seen:
                seen.add(form)
                forms.append(form)
    forms.sort(key=lambda f: (len(f[0]) if f else 1, f))
    return [FiniteQuotient(pres, form, label=f"quot{len(form[0])}-{i}")
            for i, form in enumerate(forms, start=1)]


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def build_census(knot: KnotGroupData, max_index: int,
                 max_sym_degree: int) -> Census:
    """Covers = cyclic covers of degree <= max_index plus one representative
    per conjugacy class from the low-index enumeration; quotient pool from
    exhaustive search into Sym(k), k <= max_sym_degree (at most 7)."""
    if max_index < 1:
        raise ValueError("max_index must be >= 1")
    if not 1 <= max_sym_degree <= 7:
        raise ValueError("max_sym_degree must be between 1 and 7")
    warnings: list[str] = []
    covers = []
    for n in range(1, max_index + 1):
        table = todd_coxeter(knot.presentation, CyclicCover(n))
        covers.append(build_cover(knot, f"cyclic-{n}", table))
    by_index: dict[int, int] = {}
    for table in low_index_subgroups(knot.presentation, max_index):
        n = table.n_cosets
        by_index[n] = by_index.get(n, 0) + 1
        covers.append(build_cover(knot, f"index{n}-{by_index[n]}", table))
    pool = _hom_pool(knot, max_sym_degree, warnings)
    return Census(knot=knot, covers=covers, pool=pool, warnings=warnings)


# ---------------------------------------------------------------------------
# suites

@dataclass
class SuiteResult:
    name: str
    theorem: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if not self.failures else "fail"

    def to_json_dict(self) -> dict:
        return {"name": self.name, "theorem": self.theorem,
                "status": self.status, "checked": self.checked,
                "failures": self.failures, "notes": self.notes}


@dataclass
class SuiteReport:
    knot_label: str
    n_covers: int
    n_quotients: int
    primes: tuple[int, ...]
    seed: int
    warnings: list[str]
    suites: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.status == "pass" for s in self.suites)

    def to_json_dict(self) -> dict:
        return {
            "knot": self.knot_label,
            "covers": self.n_covers,
            "quotients": self.n_quotients,
            "primes": list(self.primes),
            "seed": self.seed,
            "warnings": self.warnings,
            "suites": [s.to_json_dict() for s in self.suites],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)


def _random_word(rng: random.Random, n_gens: int, max_len: int) -> Word:
    length = rng.randint(1, max_len)
    return Word([(rng.randrange(n_gens), rng.choice((1, -1)))
                 for _ in range(length)])


def _suite_structure(census: Census, result: SuiteResult) -> None:
    knot = census.knot
    for cover in census.covers:
        result.checked += 1
        table = cover.table
        issues = []
        if sum(d.ramification_index for d in cover.inertia) != table.n_cosets:
            issues.append("ramification indices do not sum to the index")
        for d in cover.inertia:
            c = d.rep_coset
            for k in range(1, d.ramification_index):
                if table.trace(c, knot.meridian ** k) == c:
                    issues.append(f"orbit length not minimal at coset {c}")
                    break
            if table.trace(c, knot.meridian ** d.ramification_index) != c:
                issues.append(f"meridian power does not return coset {c}")
            if table.trace(1, d.generator_in_g) != 1:
                issues.append("inertia generator escapes the subgroup")
            if knot.word_degree(d.generator_in_g) != d.ramification_index:
                issues.append("inertia generator degree differs from the index")
        if isinstance(table.subgroup_spec, CyclicCover):
            n = table.subgroup_spec.degree
            if [d.ramification_index for d in cover.inertia] != [n]:
                issues.append("cyclic cover does not have one index-n inertia class")
        pres = knot.presentation
        if pres.n_generators == 2 and len(pres.relators) == 1:
            deficiency = (cover.spres.presentation.n_generators
                          - len(cover.spres.presentation.relators))
            if deficiency != 1:
                issues.append(f"rewritten presentation deficiency {deficiency} != 1")
        for issue in issues:
            result.failures.append({"cover": cover.label, "issue": issue,
                                    "inertia": [d.rep_coset for d in cover.inertia]})


def _suite_factoring(census: Census, rng: random.Random,
                     result: SuiteResult) -> None:
    knot = census.knot
    for cover in census.covers:
        extra_conjugators = [
            _random_word(rng, knot.presentation.n_generators, 6)
            for _ in range(4)]
        for q in census.pool:
            result.checked += 1
            phi = restrict_quotient(q, cover.spres)
            outcome = factoring_check(phi, cover.inertia)
            trivial = all(phi(d.generator_in_u) == phi.identity
                          for d in cover.inertia)
            if outcome.factors != trivial:
                result.failures.append({
                    "cover": cover.label, "quotient": q.label,
                    "issue": "factoring disagrees with inertia triviality"})
                continue
            if not outcome.factors:
                continue
            # representatives control every conjugate: sampled g give trivial
            # images too once the orbit representatives die
            for g in extra_conjugators:
                c = cover.table.trace(1, g)
                e = 1
                cc = cover.table.trace(c, knot.meridian)
                while cc != c:
                    cc = cover.table.trace(cc, knot.meridian)
                    e += 1
                element = g * knot.meridian ** e * ~g
                image = phi(rewrite(cover.table, cover.schreier, element))
                if image != phi.identity:
                    result.failures.append({
                        "cover": cover.label, "quotient": q.label,
                        "issue": "sampled inertia conjugate survives a "
                                 "factored homomorphism"})
                    break


def _suite_ramification_image(census: Census, result: SuiteResult) -> None:
    for cover in census.covers:
        for q in census.pool:
            phi = restrict_quotient(q, cover.spres)
            elements = sorted(phi.elements())
            if len(elements) > LATTICE_ORDER_CAP:
                result.notes.append(
                    f"skipped {cover.label} x {q.label}: image order "
                    f"{len(elements)} exceeds {LATTICE_ORDER_CAP}")
                continue
            result.checked += 1
            image = quotient_image_of_ramification(phi, cover.inertia)
            seeds = [phi(d.generator_in_u) for d in cover.inertia]
            candidates = [n for n in normal_subgroups(
                elements, compose, inverse_perm, phi.identity)
                if all(s in n for s in seeds)]
            smallest = frozenset.intersection(*candidates)
            if image != smallest:
                result.failures.append({
                    "cover": cover.label, "quotient": q.label,
                    "issue": "normal closure of inertia images is not the "
                             "smallest normal subgroup killing them",
                    "closure_order": len(image),
                    "smallest_order": len(smallest)})


def _suite_h1(census: Census, primes: tuple[int, ...], result: SuiteResult,
              profinite: SuiteResult) -> None:
    for cover in census.covers:
        quotient_pres = unramified_quotient(cover.spres, cover.inertia)
        for p in primes:
            result.checked += 1
            profinite.checked += 1
            report = inflation_check(cover.spres, quotient_pres,
                                     cover.inertia, p)
            subspace = unramified_subspace(cover.spres, cover.inertia, p)
            kills = all(
                sum(v * c for v, c in zip(
                    d.generator_in_u.exponent_vector(subspace.ambient_dim),
                    vec)) % p == 0
                for vec in subspace.basis for d in cover.inertia)
            if not (report.passed and kills):
                payload = {"cover": cover.label, "p": p,
                           "dim_unramified": report.dim_unramified,
                           "dim_h1_quotient": report.dim_h1_quotient,
                           "basis_kills_inertia": kills}
                result.failures.append(payload)
                profinite.failures.append(payload)


def _suite_shadows(census: Census, rng: random.Random,
                   intersection: SuiteResult, closure: SuiteResult) -> None:
    knot = census.knot
    n_gens = knot.presentation.n_generators
    for cover in census.covers:
        cover_perms = tuple(cover.table.generator_permutations())
        for q in census.pool:
            table_n = product_kernel_table(
                knot.presentation, [q.images, cover_perms],
                max_order=SHADOW_ORDER_CAP)
            if table_n is None:
                intersection.notes.append(
                    f"skipped {cover.label} x {q.label}: combined image "
                    f"exceeds {SHADOW_ORDER_CAP}")
                continue
            sd_n = schreier_transversal(table_n)
            conjugators = list(sd_n.transversal[:8])
            while len(conjugators) < 12:
                conjugators.append(_random_word(rng, n_gens, 6))
            report = closure_shadow_suite(knot, cover.table, table_n,
                                          tuple(conjugators))
            intersection.checked += len(report.conjugator_results)
            closure.checked += 1
            for g_text, ok in report.conjugator_results:
                if not ok:
                    intersection.failures.append({
                        "cover": cover.label, "quotient": q.label,
                        "conjugator": g_text,
                        "issue": "intersection identity fails"})
            if not report.ramification_identity:
                closure.failures.append({
                    "cover": cover.label, "quotient": q.label,
                    "issue": "ramification closure identity fails",
                    "f_order": report.f_order})


def _suite_transport(census: Census, inertia_suite: SuiteResult,
                     ram_suite: SuiteResult) -> None:
    knot = census.knot
    m = knot.meridian
    for q in census.pool:
        if q.order() > TRANSPORT_ORDER_CAP:
            inertia_suite.notes.append(
                f"skipped {q.label}: order {q.order()} exceeds "
                f"{TRANSPORT_ORDER_CAP}")
            continue
        for iso_images in automorphism_candidates(q):
            phi = extend_isomorphism(q, q, iso_images)
            y = find_meridian_shift(q, m, q, m, phi)
            if y is None:
                # not meridian-preserving: must be detected, which it was
                inertia_suite.checked += 1
                continue
            inertia_suite.checked += 1
            ram_suite.checked += 1
            try:
                report = inertia_transport_check(q, m, q, m, iso_images, y)
            except MeridianClassNotPreserved:
                inertia_suite.failures.append({
                    "quotient": q.label,
                    "issue": "verified shift rejected by the transport check"})
                continue
            if not report.family_transport_ok:
                inertia_suite.failures.append({
                    "quotient": q.label,
                    "issue": "inertia family not transported"})
            if not (report.ramification_transport_ok
                    and report.quotients_isomorphic_orders):
                ram_suite.failures.append({
                    "quotient": q.label,
                    "issue": "ramification closure or quotient not transported"})


_PROFINITE_SUITE_NOTE = (
    "No separate computation: continuous characters of the profinite "
    "completion of a finitely generated group coincide with ordinary "
    "characters, so the unramified-character suite above certifies the "
    "profinite statement as well.")


def run_suites(census: Census, primes: tuple[int, ...] | list[int],
               seed: int = 0) -> SuiteReport:
    """Run every verification suite on the census; deterministic for a fixed
    (census, primes, seed).  Failures are data, never exceptions."""
    primes = tuple(primes)
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    rng = random.Random(seed)

    structure = SuiteResult(
        "orbit-structure",
        "ramification indices partition the covering degree; inertia "
        "generators are minimal meridian returns inside the cover subgroup")
    factoring = SuiteResult(
        "universal-factoring",
        "a finite-image homomorphism of the cover subgroup factors through "
        "the unramified quotient exactly when it kills every inertia generator")
    ram_image = SuiteResult(
        "ramification-image",
        "the image of the ramification subgroup in a finite quotient is the "
        "normal closure of the inertia images, the smallest normal subgroup "
        "killing them")
    h1 = SuiteResult(
        "unramified-h1",
        "inflation identifies degree-one cohomology of the unramified "
        "quotient with the classes vanishing on every inertia subgroup")
    profinite = SuiteResult(
        "profinite-h1",
        "for finitely generated cover subgroups the profinite "
        "unramified-character statement coincides with the discrete one")
    profinite.notes.append(_PROFINITE_SUITE_NOTE)
    intersection = SuiteResult(
        "closure-intersection",
        "in a finite quotient whose kernel lies in the cover subgroup, the "
        "image of a meridian-conjugate intersection equals the intersection "
        "of the images")
    closure = SuiteResult(
        "ramification-closure",
        "in such finite quotients the ramification image is the normal "
        "closure of all meridian-conjugate intersections")
    transport_inertia = SuiteResult(
        "inertia-transport",
        "meridian-class-preserving isomorphisms of finite images transport "
        "the inertia families, with the conjugating index shift")
    transport_ram = SuiteResult(
        "ramification-transport",
        "meridian-class-preserving isomorphisms transport ramification "
        "closures and induce isomorphic unramified quotients")

    _suite_structure(census, structure)
    _suite_factoring(census, rng, factoring)
    _suite_ramification_image(census, ram_image)
    _suite_h1(census, primes, h1, profinite)
    _suite_shadows(census, rng, intersection, closure)
    _suite_transport(census, transport_inertia, transport_ram)

    return SuiteReport(
        knot_label=census.knot.label or "unlabeled",
        n_covers=len(census.covers),
        n_quotients=len(census.pool),
        primes=primes,
        seed=seed,
        warnings=list(census.warnings),
        suites=[structure, factoring, ram_image, h1, profinite,
                intersection, closure, transport_inertia, transport_ram],
    )

"""Meridional inertia, the ramification subgroup, and its finite images.

For a cover given by a coset table, the conjugacy classes of meridional
inertia subgroups of the cover subgroup U correspond to the orbits of the
meridian on cosets: the orbit of coset c, of length e, carries the cyclic
subgroup generated by t_c m^e t_c^-1 (t_c the transversal representative).
That element lies in U because e is exactly the first return time of the
meridian to the coset, so the finitely many orbit representatives present
the ramification subgroup M_U as a normal closure.  Killing their rewrites
in U's presentation yields the maximal meridionally unramified quotient.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cosets import CosetTable
from .linalg import AbelianInvariants
from .perms import (Perm, group_closure, identity_perm, inverse_perm,
                    normal_closure, orbits)
from .presentations import Presentation, abelianization
from .rewriting import SchreierData, SubgroupPresentation, rewrite_from
from .words import Word


class LongitudeMissing(ValueError):
    """Boundary data needs a longitude and none was provided."""


class RelatorNotKilled(ValueError):
    """Claimed homomorphism does not kill a defining relator."""


@dataclass(frozen=True)
class InertiaDatum:
    """One meridian orbit on cosets: representative coset, ramification
    index (= orbit length), and the inertia generator both as an ambient
    word and rewritten into subgroup generators."""

    rep_coset: int
    ramification_index: int
    generator_in_g: Word
    generator_in_u: Word

    def to_json_dict(self, g_names: tuple[str, ...],
                     u_names: tuple[str, ...]) -> dict:
        from .parsing import word_to_text
        return {
            "rep_coset": self.rep_coset,
            "ramification_index": self.ramification_index,
            "generator_in_g": word_to_text(self.generator_in_g, g_names),
            "generator_in_u": word_to_text(self.generator_in_u, u_names),
        }


def inertia_data(table: CosetTable, sd: SchreierData,
                 meridian: Word) -> tuple[InertiaDatum, ...]:
    """One datum per meridian orbit, smallest coset as representative."""
    m_perm = table.perm_of_word(meridian)
    data = []
    for orbit in orbits([m_perm], table.n_cosets):
        c = orbit[0] + 1
        e = len(orbit)
        gen_g = sd.transversal[c - 1] * meridian ** e * ~sd.transversal[c - 1]
        gen_u = rewrite_from(table, sd, c, meridian ** e)
        data.append(InertiaDatum(rep_coset=c, ramification_index=e,
                                 generator_in_g=gen_g, generator_in_u=gen_u))
    return tuple(data)


def unramified_quotient(spres: SubgroupPresentation,
                        inertia: tuple[InertiaDatum, ...]) -> Presentation:
    """The subgroup presentation with every inertia generator killed."""
    return Presentation(
        generator_names=spres.presentation.generator_names,
        relators=spres.presentation.relators
        + tuple(d.generator_in_u for d in inertia),
    )


@dataclass(frozen=True)
class BoundaryReport:
    """Connected components of the boundary of the cover: orbits of the
    peripheral subgroup on cosets, each listing the meridian-orbit
    representatives it contains."""

    n_components: int
    components: tuple[tuple[int, ...], ...]  # meridian orbit reps per component


def boundary_components(table: CosetTable, meridian: Word,
                        longitude: Word | None) -> BoundaryReport:
    if longitude is None:
        raise LongitudeMissing("boundary components need a longitude word")
    m_perm = table.perm_of_word(meridian)
    l_perm = table.perm_of_word(longitude)
    meridian_reps = {orbit[0]: orbit for orbit in orbits([m_perm], table.n_cosets)}
    components = []
    for comp in orbits([m_perm, l_perm], table.n_cosets):
        comp_set = set(comp)
        reps = tuple(rep + 1 for rep in sorted(meridian_reps)
                     if meridian_reps[rep][0] in comp_set)
        components.append(reps)
    return BoundaryReport(n_components=len(components),
                          components=tuple(components))


class FiniteQuotient:
    """A homomorphism onto a finite permutation group, given by generator
    images; construction verifies every relator dies.  The group itself is
    the subgroup generated by the images."""

    def __init__(self, presentation: Presentation, images: tuple[Perm, ...],
                 label: str = ""):
        if len(images) != presentation.n_generators:
            raise ValueError("need one permutation image per generator")
        degree = len(images[0]) if images else 1
        if any(len(p) != degree for p in images):
            raise ValueError("permutation images must share one degree")
        self.presentation = presentation
        self.images = tuple(tuple(p) for p in images)
        self.degree = degree
        self.label = label
        self._inverses = [inverse_perm(p) for p in self.images]
        self._elements: frozenset[Perm] | None = None
        ident = identity_perm(degree)
        for rel in presentation.relators:
            if self(rel) != ident:
                raise RelatorNotKilled(f"relator is not killed by the images")

    @property
    def identity(self) -> Perm:
        return identity_perm(self.degree)

    def __call__(self, w: Word) -> Perm:
        perm = identity_perm(self.degree)
        for g, s in w:
            p = self.images[g] if s > 0 else self._inverses[g]
            perm = tuple(p[v] for v in perm)
        return perm

    def elements(self) -> frozenset[Perm]:
        if self._elements is None:
            from .perms import compose
            self._elements = frozenset(
                group_closure(self.images, compose, self.identity))
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "label": self.label,
            "images": {name: [v + 1 for v in p]
                       for name, p in zip(self.presentation.generator_names,
                                          self.images)},
            "order": self.order(),
        }

    def __repr__(self) -> str:
        return (f"<FiniteQuotient degree={self.degree} order={self.order()}"
                + (f" {self.label}" if self.label else "") + ">")


def restrict_quotient(q: FiniteQuotient, spres: SubgroupPresentation,
                      label: str = "") -> FiniteQuotient:
    """Restriction of a quotient of the ambient group to the subgroup, as a
    quotient of the subgroup presentation (images of the embeddings)."""
    images = tuple(q(emb) for emb in spres.embedding)
    return FiniteQuotient(spres.presentation, images,
                          label=label or (q.label and f"{q.label}|U"))


def quotient_image_of_ramification(q: FiniteQuotient,
                                   inertia: tuple[InertiaDatum, ...]
                                   ) -> frozenset[Perm]:
    """Image of the ramification subgroup: the normal closure, inside the
    image group, of the images of the inertia generators.  ``q`` must be a
    quotient of the subgroup presentation (inertia rewritten into its
    generators)."""
    from .perms import compose
    seeds = [q(d.generator_in_u) for d in inertia]
    return normal_closure(seeds, list(q.images), compose, inverse_perm,
                          q.identity)


@dataclass(frozen=True)
class FactoringResult:
    """Outcome of testing whether a finite-image homomorphism of the cover
    subgroup kills all inertia: if so it factors through the unramified
    quotient and ``induced`` carries the factored homomorphism; otherwise
    ``witness`` is a violating inertia datum."""

    factors: bool
    induced: FiniteQuotient | None
    witness: InertiaDatum | None


def factoring_check(phi: FiniteQuotient,
                    inertia: tuple[InertiaDatum, ...]) -> FactoringResult:
    """Factoring through the unramified quotient happens exactly when every
    inertia image is trivial; the induced map keeps the generator images and
    is revalidated against the enlarged relator set."""
    for datum in inertia:
        if phi(datum.generator_in_u) != phi.identity:
            return FactoringResult(factors=False, induced=None, witness=datum)
    quotient_pres = Presentation(
        generator_names=phi.presentation.generator_names,
        relators=phi.presentation.relators
        + tuple(d.generator_in_u for d in inertia),
    )
    induced = FiniteQuotient(quotient_pres, phi.images,
                             label=phi.label and f"{phi.label}/ram")
    return FactoringResult(factors=True, induced=induced, witness=None)


@dataclass(frozen=True)
class RamificationReport:
    """Everything the pipeline knows about one cover."""

    label: str
    index: int
    inertia: tuple[InertiaDatum, ...]
    quotient_presentation: Presentation
    h1_u: AbelianInvariants
    h1_quotient: AbelianInvariants
    boundary_tori: int | None = None

    def ramification_indices(self) -> tuple[int, ...]:
        return tuple(sorted(d.ramification_index for d in self.inertia))

    def to_json_dict(self, g_names: tuple[str, ...]) -> dict:
        u_names = self.quotient_presentation.generator_names
        return {
            "label": self.label,
            "index": self.index,
            "inertia": [d.to_json_dict(g_names, u_names) for d in self.inertia],
            "h1_cover": str(self.h1_u),
            "h1_unramified_quotient": str(self.h1_quotient),
            "ramification_indices": list(self.ramification_indices()),
            "boundary_tori": self.boundary_tori,
        }


def ramification_report(label: str, table: CosetTable, sd: SchreierData,
                        spres: SubgroupPresentation,
                        inertia: tuple[InertiaDatum, ...],
                        meridian: Word,
                        longitude: Word | None = None) -> RamificationReport:
    quotient = unramified_quotient(spres, inertia)
    boundary = None
    if longitude is not None:
        boundary = boundary_components(table, meridian, longitude).n_components
    report = RamificationReport(
        label=label,
        index=table.n_cosets,
        inertia=inertia,
        quotient_presentation=quotient,
        h1_u=abelianization(spres.presentation),
        h1_quotient=abelianization(quotient),
        boundary_tori=boundary,
    )
    if sum(report.ramification_indices()) != report.index:
        raise AssertionError("ramification indices do not partition the degree")
    return report

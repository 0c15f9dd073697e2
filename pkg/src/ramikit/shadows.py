"""Finite-quotient shadows of the closure and transport statements.

Profinite objects never appear here as data; every statement about closures
is tested in a finite quotient G/N where it becomes an exact identity.  N is
presented by a coset table whose action is regular (N normal), so cosets of
N serve directly as the elements of the finite group: multiplication is
"trace the representative word", and the quotient map is "trace from coset
1".  All subgroup computations then run on plain coset indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cosets import CosetTable, PermRep, todd_coxeter
from .perms import (Perm, compose, group_closure, identity_perm, inverse_perm,
                    normal_closure, subgroup_closure)
from .presentations import KnotGroupData, Presentation
from .ramification import FiniteQuotient, InertiaDatum
from .rewriting import SchreierData, schreier_transversal
from .words import Word


class NotNormal(ValueError):
    """The claimed kernel subgroup is not normal in the ambient group."""


class NotContainedInU(ValueError):
    """The claimed kernel subgroup is not contained in the cover subgroup."""


class NotIsomorphism(ValueError):
    """The generator-image map does not define a bijective homomorphism."""


class MeridianClassNotPreserved(ValueError):
    """The isomorphism moves the meridian subgroup off its conjugacy class."""


class RegularQuotient:
    """The finite group G/N read off a regular coset table: elements are
    coset numbers, multiplication traces transversal words."""

    def __init__(self, table: CosetTable, sd: SchreierData):
        self.table = table
        self.sd = sd
        n = table.n_cosets
        self._inv = [0] * (n + 1)
        for c in range(1, n + 1):
            self._inv[c] = table.trace(1, ~sd.transversal[c - 1])

    @property
    def order(self) -> int:
        return self.table.n_cosets

    @property
    def identity(self) -> int:
        return 1

    def elements(self) -> range:
        return range(1, self.order + 1)

    def mult(self, c: int, d: int) -> int:
        return self.table.trace(c, self.sd.transversal[d - 1])

    def inv(self, c: int) -> int:
        return self._inv[c]

    def conj(self, c: int, by: int) -> int:
        return self.mult(self.mult(by, c), self.inv(by))

    def image(self, w: Word) -> int:
        """The quotient map G -> G/N."""
        return self.table.trace(1, w)

    def cyclic(self, c: int) -> list[int]:
        out = [1]
        x = c
        while x != 1:
            out.append(x)
            x = self.mult(x, c)
        return out


def product_kernel_table(pres: Presentation, actions: list[tuple[Perm, ...]],
                         max_order: int = 5000) -> CosetTable | None:
    """Coset table of the kernel N of the combined permutation action (one
    block per action): the regular table of the image group, obtained by
    closing the block-diagonal generator images.  Returns None when the image
    would exceed ``max_order``."""
    block_images: list[Perm] = []
    for gi in range(pres.n_generators):
        combined: list[int] = []
        offset = 0
        for action in actions:
            combined.extend(v + offset for v in action[gi])
            offset += len(action[gi])
        block_images.append(tuple(combined))

    ident = identity_perm(len(block_images[0]) if block_images else 1)
    elements = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elements):
        x = elements[i]
        i += 1
        for g in block_images:
            y = compose(x, g)
            if y not in index:
                if len(elements) >= max_order:
                    return None
                index[y] = len(elements)
                elements.append(y)
    size = len(elements)
    regular = tuple(
        tuple(index[compose(x, g)] for x in elements) for g in block_images)
    return todd_coxeter(pres, PermRep(images=regular, point=1))


def _check_normal_and_contained(table_u: CosetTable, table_n: CosetTable,
                                sd_n: SchreierData) -> None:
    for w in sd_n.embeddings:
        if table_u.trace(1, w) != 1:
            raise NotContainedInU("a generator of N lies outside U")
    n_gens = table_n.n_generators
    for w in sd_n.embeddings:
        for gen in range(n_gens):
            for sign in (1, -1):
                conj = Word.gen(gen, sign) * w * Word.gen(gen, -sign)
                if table_n.trace(1, conj) != 1:
                    raise NotNormal("N is not closed under conjugation")


@dataclass(frozen=True)
class ShadowReport:
    """Outcome of the two closure identities in F = G/N."""

    f_order: int
    u_image_order: int
    intersection_identity: bool      # per conjugator g
    ramification_identity: bool      # once per N
    conjugator_results: tuple[tuple[str, bool], ...]


def closure_shadow_suite(gdata: KnotGroupData, table_u: CosetTable,
                         table_n: CosetTable,
                         conjugators: tuple[Word, ...]) -> ShadowReport:
    """Verify, inside F = G/N with N normal and N <= U:

    (i) for each conjugator g, the image of U n g<m>g^-1 equals
        q(U) n q(g) <q(m)> q(g)^-1, both computed by brute force;
    (ii) the image of the ramification subgroup of U (normal closure of the
        inertia images) equals the normal closure in q(U) of all
        intersections q(U) n x <q(m)> x^-1, x ranging over F.

    Identity (ii) is computed over coset representatives of q(U) in F: for
    x' = u x with u in q(U) the intersection is the u-conjugate of the one
    for x, so representatives already generate the same normal closure.
    """
    from .parsing import word_to_text
    from .ramification import inertia_data
    from .rewriting import schreier_transversal as _st

    sd_n = schreier_transversal(table_n)
    _check_normal_and_contained(table_u, table_n, sd_n)
    fq = RegularQuotient(table_n, sd_n)
    meridian = gdata.meridian

    u_image = frozenset(c for c in fq.elements()
                        if table_u.trace(1, sd_n.transversal[c - 1]) == 1)
    m_img = fq.image(meridian)
    m_cyclic = fq.cyclic(m_img)
    m_perm_u = table_u.perm_of_word(meridian)

    # (i) per conjugator
    results = []
    all_ok = True
    names = gdata.presentation.generator_names
    for g in conjugators:
        coset_g = table_u.trace(1, g)
        e = 1
        c = table_u.trace(coset_g, meridian)
        while c != coset_g:
            c = table_u.trace(c, meridian)
            e += 1
        x = fq.image(g)
        lhs_gen = fq.conj(fq.image(meridian ** e), x)
        lhs = set(fq.cyclic(lhs_gen))
        rhs = {y for y in (fq.conj(t, x) for t in m_cyclic) if y in u_image}
        ok = lhs == rhs
        all_ok = all_ok and ok
        results.append((word_to_text(g, names) or "1", ok))

    # (ii) once: ramification image versus meridian-conjugate intersections
    sd_u = _st(table_u)
    inertia = inertia_data(table_u, sd_u, meridian)
    u_gens_in_f = sorted({fq.image(w) for w in sd_u.embeddings})
    ram_lhs = normal_closure(
        [fq.image(d.generator_in_g) for d in inertia],
        u_gens_in_f, fq.mult, fq.inv, fq.identity)

    seen = set()
    seeds: list[int] = []
    for x in fq.elements():
        if x in seen:
            continue
        seen.update(fq.mult(u, x) for u in u_image)
        seeds.extend(y for y in (fq.conj(t, x) for t in m_cyclic)
                     if y in u_image)
    ram_rhs = normal_closure(seeds, u_gens_in_f, fq.mult, fq.inv, fq.identity)
    ram_ok = ram_lhs == ram_rhs

    return ShadowReport(
        f_order=fq.order,
        u_image_order=len(u_image),
        intersection_identity=all_ok,
        ramification_identity=ram_ok,
        conjugator_results=tuple(results),
    )


def closure_shadow_check(gdata: KnotGroupData, table_u: CosetTable,
                         table_n: CosetTable, g: Word) -> ShadowReport:
    """Single-conjugator form of the closure shadow suite."""
    return closure_shadow_suite(gdata, table_u, table_n, (g,))


# ---------------------------------------------------------------------------
# transport of inertia under meridian-preserving isomorphisms of images

def extend_isomorphism(q1: FiniteQuotient, q2: FiniteQuotient,
                       iso_images: tuple[Perm, ...]) -> dict[Perm, Perm]:
    """Extend generator images q1(g_i) |-> iso_images[i] to a bijective
    homomorphism of the image groups, or raise NotIsomorphism."""
    f1 = sorted(q1.elements())
    f2 = q2.elements()
    if len(f1) != len(f2):
        raise NotIsomorphism("image groups have different orders")
    phi = {q1.identity: identity_perm(q2.degree)}
    queue = [q1.identity]
    while queue:
        x = queue.pop(0)
        for g, h in zip(q1.images, iso_images):
            y = compose(x, g)
            img = compose(phi[x], h)
            if y in phi:
                if phi[y] != img:
                    raise NotIsomorphism("generator images are inconsistent")
            else:
                phi[y] = img
                queue.append(y)
    if len(phi) != len(f1):
        raise NotIsomorphism("generator images do not span the image group")
    if set(phi.values()) != f2:
        raise NotIsomorphism("map is not onto the target image group")
    return phi


def find_meridian_shift(q1: FiniteQuotient, m1: Word, q2: FiniteQuotient,
                        m2: Word, phi: dict[Perm, Perm]) -> Perm | None:
    """An element y with phi(<q1(m1)>) = y <q2(m2)> y^-1, if one exists."""
    src = frozenset(group_closure([q1(m1)], compose, q1.identity))
    mapped = frozenset(phi[x] for x in src)
    tgt = list(group_closure([q2(m2)], compose, q2.identity))
    for y in sorted(q2.elements()):
        y_inv = inverse_perm(y)
        conj = frozenset(compose(compose(y, t), y_inv) for t in tgt)
        if conj == mapped:
            return y
    return None


@dataclass(frozen=True)
class TransportRecord:
    subgroup_order: int
    family_size: int
    family_transported: bool
    ramification_transported: bool
    quotient_orders: tuple[int, int]  # |V/ramcl(V)|, |V2/ramcl(V2)|


@dataclass(frozen=True)
class TransportReport:
    n_subgroups: int
    family_transport_ok: bool
    ramification_transport_ok: bool
    quotients_isomorphic_orders: bool
    records: tuple[TransportRecord, ...]

    @property
    def passed(self) -> bool:
        return (self.family_transport_ok and self.ramification_transport_ok
                and self.quotients_isomorphic_orders)


def inertia_transport_check(q1: FiniteQuotient, m1: Word,
                            q2: FiniteQuotient, m2: Word,
                            iso_images: tuple[Perm, ...],
                            y: Perm | None = None) -> TransportReport:
    """Check that an isomorphism of finite images sending the meridian
    subgroup to a conjugate of the target meridian subgroup transports, for
    every subgroup V of the source image, the family of meridian-conjugate
    intersections (with the index shift x -> phi(x) y) and the ramification
    closure, and hence induces isomorphic unramified quotients.

    Raises NotIsomorphism / MeridianClassNotPreserved when the hypotheses
    fail.  When ``y`` is omitted a valid shift is searched for.
    """
    from .perms import all_subgroups

    phi = extend_isomorphism(q1, q2, iso_images)
    if y is None:
        y = find_meridian_shift(q1, m1, q2, m2, phi)
        if y is None:
            raise MeridianClassNotPreserved(
                "no shift conjugates the mapped meridian subgroup correctly")
    m1_cyc = list(group_closure([q1(m1)], compose, q1.identity))
    m2_cyc = list(group_closure([q2(m2)], compose, q2.identity))
    mapped = frozenset(phi[x] for x in m1_cyc)
    y_inv = inverse_perm(y)
    if frozenset(compose(compose(y, t), y_inv) for t in m2_cyc) != mapped:
        raise MeridianClassNotPreserved(
            "shift does not conjugate the mapped meridian subgroup correctly")

    f1 = sorted(q1.elements())
    f2_elements = q2.elements()

    def inertia_family(v: frozenset[Perm], elements, cyc) -> dict[Perm, frozenset[Perm]]:
        fam = {}
        for x in elements:
            x_inv = inverse_perm(x)
            fam[x] = frozenset(t2 for t2 in
                               (compose(compose(x, t), x_inv) for t in cyc)
                               if t2 in v)
        return fam

    records = []
    fam_ok = ram_ok = quot_ok = True
    for v in all_subgroups(f1, compose, q1.identity):
        v2 = frozenset(phi[x] for x in v)
        fam1 = inertia_family(v, f1, m1_cyc)
        fam2 = inertia_family(v2, sorted(f2_elements), m2_cyc)
        this_fam = all(
            frozenset(phi[t] for t in fam1[x]) == fam2[compose(phi[x], y)]
            for x in f1)
        this_fam = this_fam and (
            {frozenset(phi[t] for t in s) for s in fam1.values()}
            == set(fam2.values()))

        v_gens = sorted(v)
        ram1 = normal_closure(
            [t for s in fam1.values() for t in s], v_gens, compose,
            inverse_perm, q1.identity)
        ram2 = normal_closure(
            [t for s in fam2.values() for t in s], sorted(v2), compose,
            inverse_perm, q2.identity)
        this_ram = frozenset(phi[t] for t in ram1) == ram2
        this_quot = len(v) // len(ram1) == len(v2) // len(ram2)

        fam_ok = fam_ok and this_fam
        ram_ok = ram_ok and this_ram
        quot_ok = quot_ok and this_quot
        records.append(TransportRecord(
            subgroup_order=len(v),
            family_size=len(set(fam1.values())),
            family_transported=this_fam,
            ramification_transported=this_ram,
            quotient_orders=(len(v) // len(ram1), len(v2) // len(ram2)),
        ))
    return TransportReport(
        n_subgroups=len(records),
        family_transport_ok=fam_ok,
        ramification_transport_ok=ram_ok,
        quotients_isomorphic_orders=quot_ok,
        records=tuple(records),
    )


def automorphism_candidates(q: FiniteQuotient) -> list[tuple[Perm, ...]]:
    """All generator-image tuples defining automorphisms of the image group
    (brute force; meant for image orders up to a few dozen)."""
    elements = sorted(q.elements())
    out = []
    for tup in itertools.product(elements, repeat=len(q.images)):
        try:
            extend_isomorphism(q, q, tup)
        except NotIsomorphism:
            continue
        out.append(tup)
    return out

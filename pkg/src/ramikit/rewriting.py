"""Schreier transversals, Schreier generators, and subgroup presentations.

The transversal is shortlex-minimal for the alphabet order a < a^-1 < b <
b^-1 < ..., found by breadth-first search from coset 1; it is prefix-closed,
so every transversal word traces through tree edges only.  Schreier
generators sit on the non-tree edges (coset, generator); tree edges rewrite
to nothing, which keeps the rewritten presentations small.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cosets import CosetTable
from .presentations import Presentation
from .words import Word


class NotInSubgroup(ValueError):
    """The word does not lie in the subgroup (its trace moves coset 1)."""


@dataclass(frozen=True)
class SchreierData:
    """Transversal words (index c-1 for coset c) and the Schreier generator
    layout: ``edge_to_ugen[(coset, gen)]`` is a subgroup-generator index, or
    None on spanning-tree edges where the Schreier element is trivial."""

    transversal: tuple[Word, ...]
    edge_to_ugen: dict[tuple[int, int], int | None]
    ugen_edges: tuple[tuple[int, int], ...]
    embeddings: tuple[Word, ...]

    @property
    def n_ugens(self) -> int:
        return len(self.ugen_edges)


def schreier_transversal(table: CosetTable) -> SchreierData:
    """BFS transversal plus the Schreier generator enumeration."""
    n = table.n_cosets
    transversal: list[Word | None] = [None] * n
    transversal[0] = Word()
    queue = [1]
    while queue:
        c = queue.pop(0)
        for gen in range(table.n_generators):
            for sign in (1, -1):
                d = table.act(c, gen, sign)
                if transversal[d - 1] is None:
                    transversal[d - 1] = transversal[c - 1] * Word.gen(gen, sign)
                    queue.append(d)
    if any(t is None for t in transversal):
        raise AssertionError("coset table is not transitive")

    edge_to_ugen: dict[tuple[int, int], int | None] = {}
    ugen_edges: list[tuple[int, int]] = []
    embeddings: list[Word] = []
    for c in range(1, n + 1):
        for gen in range(table.n_generators):
            d = table.act(c, gen)
            element = transversal[c - 1] * Word.gen(gen) * ~transversal[d - 1]
            if element.is_identity:
                edge_to_ugen[(c, gen)] = None
            else:
                edge_to_ugen[(c, gen)] = len(ugen_edges)
                ugen_edges.append((c, gen))
                embeddings.append(element)
    return SchreierData(transversal=tuple(transversal),
                        edge_to_ugen=edge_to_ugen,
                        ugen_edges=tuple(ugen_edges),
                        embeddings=tuple(embeddings))


def rewrite_from(table: CosetTable, sd: SchreierData, start: int,
                 w: Word) -> Word:
    """Reidemeister rewriting of ``transversal[start] * w * transversal[start]^-1``
    into subgroup generators; requires the trace of ``w`` to fix ``start``."""
    if table.trace(start, w) != start:
        raise NotInSubgroup(f"word does not stabilize coset {start}")
    letters = []
    c = start
    for gen, sign in w:
        if sign > 0:
            ugen = sd.edge_to_ugen[(c, gen)]
            if ugen is not None:
                letters.append((ugen, 1))
            c = table.act(c, gen)
        else:
            d = table.act(c, gen, -1)
            ugen = sd.edge_to_ugen[(d, gen)]
            if ugen is not None:
                letters.append((ugen, -1))
            c = d
    return Word(letters)


def rewrite(table: CosetTable, sd: SchreierData, w: Word) -> Word:
    """Rewrite a word of the subgroup (trace fixes coset 1) into subgroup
    generators.  Raises NotInSubgroup otherwise."""
    if table.trace(1, w) != 1:
        raise NotInSubgroup("word is not in the subgroup")
    return rewrite_from(table, sd, 1, w)


@dataclass(frozen=True)
class SubgroupPresentation:
    """Rewritten presentation of the subgroup, with the embedding of each
    subgroup generator as a word of the ambient group.  The raw counts record
    generators/relators before pruning trivial Schreier generators and
    before dropping relators that reduce to the identity."""

    presentation: Presentation
    embedding: tuple[Word, ...]
    raw_generator_count: int
    raw_relator_count: int

    def embedding_of(self, w: Word) -> Word:
        """Push a word in subgroup generators back into the ambient group."""
        out = Word()
        for g, s in w:
            piece = self.embedding[g]
            out = out * (piece if s > 0 else ~piece)
        return out


def _ugen_names(pres: Presentation, sd: SchreierData) -> tuple[str, ...]:
    single = all(len(name) == 1 for name in pres.generator_names)
    names = []
    for c, gen in sd.ugen_edges:
        base = pres.generator_names[gen]
        names.append(f"{base}{c}" if single else f"{base}_{c}")
    if len(set(names)) != len(names):
        raise AssertionError("subgroup generator naming collision")
    return tuple(names)


def reidemeister_schreier(pres: Presentation, table: CosetTable,
                          sd: SchreierData) -> SubgroupPresentation:
    """Presentation of the subgroup on its nontrivial Schreier generators:
    one relator per (coset, relator-of-the-group) pair, each the rewriting of
    the conjugated relator by the coset representative."""
    relators = []
    raw = 0
    for c in range(1, table.n_cosets + 1):
        for rel in pres.relators:
            raw += 1
            relators.append(rewrite_from(table, sd, c, rel))
    sub = Presentation(generator_names=_ugen_names(pres, sd),
                       relators=tuple(relators))
    return SubgroupPresentation(
        presentation=sub,
        embedding=sd.embeddings,
        raw_generator_count=table.n_cosets * pres.n_generators,
        raw_relator_count=raw,
    )

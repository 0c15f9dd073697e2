"""Coset tables and Todd-Coxeter enumeration.

Cosets are numbered from 1 in discovery order and coset 1 is always the
subgroup itself.  A subgroup can be specified three ways:

* ``GeneratorWords`` -- classic enumeration (HLT strategy with immediate
  coincidence handling and first-free-coset introduction, which makes tables
  reproducible);
* ``CyclicCover(n)`` -- the kernel of the map sending a word to its total
  meridional degree mod n, built directly from the degree action;
* ``PermRep`` -- the stabilizer of a point of a permutation action, built as
  the orbit table of that point.

Permutations handed in or out are 0-based tuples; cosets are 1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .perms import (Perm, canonical_transitive, identity_perm, inverse_perm,
                    is_perm)
from .presentations import Presentation, infinite_cyclic_degree
from .words import Word, cyclically_reduce

DEFAULT_MAX_COSETS = 10 ** 6


class CosetLimitExceeded(RuntimeError):
    """Enumeration hit the coset ceiling: the index may be infinite, or the
    limit is simply too small for this presentation."""

    def __init__(self, max_cosets: int):
        self.max_cosets = max_cosets
        super().__init__(f"coset enumeration exceeded {max_cosets} cosets")


class IncompatiblePermRep(ValueError):
    """The assigned permutations do not kill every relator."""


@dataclass(frozen=True)
class GeneratorWords:
    words: tuple[Word, ...]


@dataclass(frozen=True)
class CyclicCover:
    degree: int

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError("cover degree must be >= 1")


@dataclass(frozen=True)
class PermRep:
    """Generator images (0-based permutation tuples, one per generator) and a
    1-based base point whose stabilizer is the subgroup."""

    images: tuple[Perm, ...]
    point: int = 1


SubgroupSpec = GeneratorWords | CyclicCover | PermRep


def _letters(w: Word) -> list[int]:
    # letter encoding: 2*g for the generator, 2*g+1 for its inverse
    return [2 * g + (0 if s > 0 else 1) for g, s in w]


class CosetTable:
    """Complete right-coset action of the generators on the cosets of a
    finite-index subgroup; rows are stored 0-based internally."""

    def __init__(self, rows: list[list[int]], n_generators: int,
                 subgroup_spec: SubgroupSpec):
        self._rows = rows
        self.n_generators = n_generators
        self.subgroup_spec = subgroup_spec

    @property
    def n_cosets(self) -> int:
        return len(self._rows)

    def act(self, coset: int, gen: int, sign: int = 1) -> int:
        return self._rows[coset - 1][2 * gen + (0 if sign > 0 else 1)] + 1

    def trace(self, start: int, w: Word) -> int:
        if not 1 <= start <= self.n_cosets:
            raise ValueError(f"coset {start} out of range")
        c = start - 1
        for letter in _letters(w):
            c = self._rows[c][letter]
        return c + 1

    def generator_permutations(self) -> list[Perm]:
        """Image of each generator in the symmetric group on the cosets."""
        return [tuple(row[2 * g] for row in self._rows)
                for g in range(self.n_generators)]

    def perm_of_word(self, w: Word) -> Perm:
        perm = identity_perm(self.n_cosets)
        images = self.generator_permutations()
        for g, s in w:
            p = images[g] if s > 0 else inverse_perm(images[g])
            perm = tuple(p[v] for v in perm)
        return perm

    def validate(self, pres: Presentation) -> None:
        """Assert completeness, permutation columns, and closed relator
        traces; subgroup-specific checks run at construction time."""
        n = self.n_cosets
        for row in self._rows:
            if len(row) != 2 * self.n_generators or any(not 0 <= v < n for v in row):
                raise AssertionError("incomplete or out-of-range coset table row")
        for g in range(self.n_generators):
            fwd = [row[2 * g] for row in self._rows]
            bwd = [row[2 * g + 1] for row in self._rows]
            if not is_perm(fwd) or inverse_perm(tuple(fwd)) != tuple(bwd):
                raise AssertionError(f"generator column {g} is not a permutation pair")
        for rel in pres.relators:
            for c in range(1, n + 1):
                if self.trace(c, rel) != c:
                    raise AssertionError("relator trace does not close")

    def to_json_dict(self, names: tuple[str, ...]) -> dict:
        action = {}
        for g, name in enumerate(names):
            action[name] = [row[2 * g] + 1 for row in self._rows]
            inv_name = name[0].upper() + name[1:]
            action[inv_name] = [row[2 * g + 1] + 1 for row in self._rows]
        return {"index": self.n_cosets, "action": action}

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, CosetTable) and self._rows == other._rows
                and self.n_generators == other.n_generators)

    def __repr__(self) -> str:
        return f"<CosetTable index={self.n_cosets} on {self.n_generators} generators>"


def trace(table: CosetTable, start: int, w: Word) -> int:
    """Right action of a word on a coset, letter by letter."""
    return table.trace(start, w)


def generator_permutations(table: CosetTable) -> list[Perm]:
    return table.generator_permutations()


# ---------------------------------------------------------------------------
# HLT enumeration

class _HLT:
    def __init__(self, pres: Presentation, subgroup_words: tuple[Word, ...],
                 max_cosets: int):
        self.n_letters = 2 * pres.n_generators
        self.max_cosets = max_cosets
        self.rows: list[list[int | None]] = [[None] * self.n_letters]
        self.p = [0]  # union-find with minimal representatives
        self.relators = [_letters(cyclically_reduce(r)) for r in pres.relators]
        self.subgroup_words = [_letters(w) for w in subgroup_words]

    def rep(self, k: int) -> int:
        root = k
        while self.p[root] != root:
            root = self.p[root]
        while self.p[k] != root:
            self.p[k], k = root, self.p[k]
        return root

    def define(self, alpha: int, letter: int) -> None:
        if len(self.rows) >= self.max_cosets:
            raise CosetLimitExceeded(self.max_cosets)
        beta = len(self.rows)
        self.rows.append([None] * self.n_letters)
        self.p.append(beta)
        self.rows[alpha][letter] = beta
        self.rows[beta][letter ^ 1] = alpha

    def merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.p[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        while queue:
            gamma = queue.pop(0)
            for letter in range(self.n_letters):
                delta = self.rows[gamma][letter]
                if delta is None:
                    continue
                self.rows[delta][letter ^ 1] = None
                mu, nu = self.rep(gamma), self.rep(delta)
                if self.rows[mu][letter] is not None:
                    self.merge(nu, self.rows[mu][letter], queue)
                elif self.rows[nu][letter ^ 1] is not None:
                    self.merge(mu, self.rows[nu][letter ^ 1], queue)
                else:
                    self.rows[mu][letter] = nu
                    self.rows[nu][letter ^ 1] = mu

    def scan_and_fill(self, alpha: int, word: list[int]) -> None:
        f, b = alpha, alpha
        i, j = 0, len(word) - 1
        while True:
            while i <= j and self.rows[f][word[i]] is not None:
                f = self.rows[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and self.rows[b][word[j] ^ 1] is not None:
                b = self.rows[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                self.rows[f][word[i]] = b
                self.rows[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def run(self) -> list[list[int]]:
        for w in self.subgroup_words:
            if w:
                self.scan_and_fill(0, w)
        alpha = 0
        while alpha < len(self.rows):
            if self.p[alpha] == alpha:
                for rel in self.relators:
                    self.scan_and_fill(alpha, rel)
                    if self.p[alpha] != alpha:
                        break
                if self.p[alpha] == alpha:
                    for letter in range(self.n_letters):
                        if self.rows[alpha][letter] is None:
                            self.define(alpha, letter)
            alpha += 1
        live = [i for i in range(len(self.rows)) if self.p[i] == i]
        renumber = {old: new for new, old in enumerate(live)}
        return [[renumber[self.rep(v)] for v in self.rows[old]] for old in live]


def _cyclic_table(pres: Presentation, n: int) -> list[list[int]]:
    degrees = infinite_cyclic_degree(pres)
    rows = []
    for c in range(n):
        row = []
        for d in degrees:
            row.append((c + d) % n)
            row.append((c - d) % n)
        rows.append(row)
    return rows


def _orbit_table(pres: Presentation, spec: PermRep) -> list[list[int]]:
    images = spec.images
    if len(images) != pres.n_generators:
        raise IncompatiblePermRep("need one permutation per generator")
    degree = len(images[0]) if images else 1
    for p in images:
        if len(p) != degree or not is_perm(p):
            raise IncompatiblePermRep(f"{p!r} is not a permutation of degree {degree}")
    if not 1 <= spec.point <= degree:
        raise IncompatiblePermRep(f"base point {spec.point} outside 1..{degree}")
    inverses = [inverse_perm(p) for p in images]
    letters = list(itertools.chain.from_iterable(zip(images, inverses)))
    for rel in pres.relators:
        perm = identity_perm(degree)
        for g, s in rel:
            p = images[g] if s > 0 else inverses[g]
            perm = tuple(p[v] for v in perm)
        if perm != identity_perm(degree):
            raise IncompatiblePermRep("a relator does not map to the identity")
    # orbit of the base point, renumbered in BFS discovery order
    start = spec.point - 1
    order = [start]
    label = {start: 0}
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for p in letters:
            if p[x] not in label:
                label[p[x]] = len(order)
                order.append(p[x])
    rows = []
    for x in order:
        rows.append([label[p[x]] for p in letters])
    return rows


def todd_coxeter(pres: Presentation, spec: SubgroupSpec,
                 max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Complete coset table for the subgroup described by ``spec``.

    Raises CosetLimitExceeded when enumeration would pass ``max_cosets``
    (possibly-infinite index, or a limit set too low) and IncompatiblePermRep
    for permutation assignments that do not satisfy the relators.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    if isinstance(spec, GeneratorWords):
        rows = _HLT(pres, spec.words, max_cosets).run()
    elif isinstance(spec, CyclicCover):
        rows = _cyclic_table(pres, spec.degree)
    elif isinstance(spec, PermRep):
        rows = _orbit_table(pres, spec)
    else:
        raise TypeError(f"unknown subgroup spec {spec!r}")
    table = CosetTable(rows, pres.n_generators, spec)
    table.validate(pres)
    if isinstance(spec, GeneratorWords):
        for w in spec.words:
            if table.trace(1, w) != 1:
                raise AssertionError("subgroup generator does not fix coset 1")
    return table


def low_index_subgroups(pres: Presentation, max_index: int
                        ) -> list[CosetTable]:
    """One coset table per conjugacy class of subgroups of index at most
    ``max_index``, via transitive generator-image backtracking with
    canonical-form deduplication.  Practical up to index 6 or so."""
    if max_index < 1:
        raise ValueError("max_index must be >= 1")
    out: list[CosetTable] = []
    for n in range(1, max_index + 1):
        seen: set[tuple[Perm, ...]] = set()
        forms: list[tuple[Perm, ...]] = []
        for images in _image_tuples(pres, n):
            if len(orbits_reachable(images, n)) != n:
                continue
            form = canonical_transitive(images)
            if form not in seen:
                seen.add(form)
                forms.append(form)
        for form in sorted(forms):
            out.append(todd_coxeter(pres, PermRep(images=form, point=1)))
    return out


def orbits_reachable(images: tuple[Perm, ...], degree: int) -> set[int]:
    """Orbit of point 0 under the generated group."""
    reach = {0}
    frontier = [0]
    inverses = [inverse_perm(p) for p in images]
    while frontier:
        x = frontier.pop()
        for p in itertools.chain(images, inverses):
            if p[x] not in reach:
                reach.add(p[x])
                frontier.append(p[x])
    return reach


def _image_tuples(pres: Presentation, degree: int):
    """Backtrack over generator images in the symmetric group of ``degree``,
    pruning with every relator whose support is already assigned."""
    perms = list(itertools.permutations(range(degree)))
    by_last_gen: list[list[Word]] = [[] for _ in range(pres.n_generators)]
    for rel in pres.relators:
        by_last_gen[rel.max_generator()].append(rel)

    def evaluate(rel: Word, chosen: list[Perm]) -> Perm:
        perm = identity_perm(degree)
        for g, s in rel:
            p = chosen[g] if s > 0 else inverse_perm(chosen[g])
            perm = tuple(p[v] for v in perm)
        return perm

    ident = identity_perm(degree)
    chosen: list[Perm] = []

    def rec(gi: int):
        if gi == pres.n_generators:
            yield tuple(chosen)
            return
        for p in perms:
            chosen.append(p)
            if all(evaluate(rel, chosen) == ident for rel in by_last_gen[gi]):
                yield from rec(gi + 1)
            chosen.pop()

    yield from rec(0)

"""Permutations and brute-force operations in small finite groups.

Permutations are tuples ``p`` of length ``degree`` with ``p[i]`` the 0-based
image of point ``i``; composition applies the left factor first, matching the
right action of group elements on cosets.  The generic subgroup routines take
explicit ``mult``/``inv`` callables so the same code serves permutation
groups and regular quotients represented by coset indices.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Sequence, TypeVar

Perm = tuple[int, ...]
T = TypeVar("T", bound=Hashable)


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply p first, then q."""
    return tuple(q[v] for v in p)


def inverse_perm(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def perm_order(p: Perm) -> int:
    q = p
    n = 1
    ident = identity_perm(len(p))
    while q != ident:
        q = compose(q, p)
        n += 1
    return n


def perm_from_cycles(cycles: Iterable[Iterable[int]], degree: int) -> Perm:
    """Build a permutation from 1-based cycles."""
    out = list(range(degree))
    for cycle in cycles:
        pts = [c - 1 for c in cycle]
        if any(not 0 <= v < degree for v in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"bad cycle {tuple(cycle)} for degree {degree}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            out[a] = b
    return tuple(out)


def cycles_string(p: Perm) -> str:
    """1-based disjoint-cycle notation, fixed points omitted; '()' if trivial."""
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        parts.append("(" + " ".join(str(v + 1) for v in cyc) + ")")
    return "".join(parts) if parts else "()"


def orbits(perms: Sequence[Perm], degree: int) -> list[tuple[int, ...]]:
    """Orbits of the generated group on 0..degree-1, each sorted, ordered by
    smallest element."""
    letters = list(perms) + [inverse_perm(p) for p in perms]
    seen = [False] * degree
    out = []
    for start in range(degree):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for p in letters:
                y = p[x]
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
                    frontier.append(y)
        out.append(tuple(sorted(orbit)))
    return out


# ---------------------------------------------------------------------------
# generic brute-force subgroup machinery

def group_closure(gens: Iterable[T], mult: Callable[[T, T], T],
                  identity: T) -> list[T]:
    """All elements generated, in deterministic BFS order from the identity."""
    gens = list(gens)
    elements = [identity]
    seen = {identity}
    i = 0
    while i < len(elements):
        x = elements[i]
        i += 1
        for g in gens:
            y = mult(x, g)
            if y not in seen:
                seen.add(y)
                elements.append(y)
    return elements


def subgroup_closure(seed: Iterable[T], mult: Callable[[T, T], T],
                     identity: T) -> frozenset[T]:
    return frozenset(group_closure(seed, mult, identity))


def normal_closure(seed: Iterable[T], group_gens: Sequence[T],
                   mult: Callable[[T, T], T], inv: Callable[[T], T],
                   identity: T) -> frozenset[T]:
    """Smallest subgroup containing ``seed`` that is normalized by the group
    generated by ``group_gens`` (closure under generator conjugation)."""
    closure_gens = list(dict.fromkeys(seed))
    elements = subgroup_closure(closure_gens, mult, identity)
    queue = list(closure_gens)
    while queue:
        t = queue.pop()
        for g in group_gens:
            c = mult(mult(g, t), inv(g))
            if c not in elements:
                closure_gens.append(c)
                queue.append(c)
                elements = subgroup_closure(closure_gens, mult, identity)
    return elements


def all_subgroups(elements: Sequence[T], mult: Callable[[T, T], T],
                  identity: T) -> list[frozenset[T]]:
    """Every subgroup of a small group, by closure of incrementally grown
    generating sets.  Exponential; intended for orders up to a few dozen."""
    trivial = frozenset({identity})
    found = {trivial}
    queue = [trivial]
    while queue:
        h = queue.pop()
        for x in elements:
            if x in h:
                continue
            bigger = subgroup_closure(set(h) | {x}, mult, identity)
            if bigger not in found:
                found.add(bigger)
                queue.append(bigger)
    return sorted(found, key=lambda s: (len(s), sorted(map(repr, s))))


def conjugacy_classes(elements: Sequence[T], mult: Callable[[T, T], T],
                      inv: Callable[[T], T]) -> list[frozenset[T]]:
    remaining = list(elements)
    classes = []
    while remaining:
        x = remaining[0]
        cls = frozenset(mult(mult(g, x), inv(g)) for g in elements)
        classes.append(cls)
        remaining = [y for y in remaining if y not in cls]
    return classes


def normal_subgroups(elements: Sequence[T], mult: Callable[[T, T], T],
                     inv: Callable[[T], T], identity: T) -> list[frozenset[T]]:
    """All normal subgroups, grown from unions of conjugacy classes."""
    classes = conjugacy_classes(elements, mult, inv)
    gens_of_group = list(elements)
    found = {frozenset({identity})}
    queue = [frozenset({identity})]
    while queue:
        n = queue.pop()
        for cls in classes:
            if cls <= n:
                continue
            bigger = normal_closure(set(n) | set(cls), gens_of_group,
                                    mult, inv, identity)
            if bigger not in found:
                found.add(bigger)
                queue.append(bigger)
    return sorted(found, key=lambda s: (len(s), sorted(map(repr, s))))


# ---------------------------------------------------------------------------
# canonical forms of generator-image tuples under simultaneous conjugation

def _bfs_labeling(images: Sequence[Perm], start: int) -> list[int] | None:
    """Relabel the orbit of ``start`` by BFS discovery order (letters in
    generator order, inverses after).  Returns old->new or None off-orbit."""
    degree = len(images[0])
    letters: list[Perm] = []
    for p in images:
        letters.append(p)
        letters.append(inverse_perm(p))
    label = [-1] * degree
    label[start] = 0
    queue = [start]
    count = 1
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        for p in letters:
            y = p[x]
            if label[y] < 0:
                label[y] = count
                count += 1
                queue.append(y)
    return label


def _relabel(images: Sequence[Perm], label: list[int],
             size: int) -> tuple[Perm, ...]:
    out = []
    for p in images:
        q = [0] * size
        for old, new in enumerate(label):
            if new >= 0:
                q[new] = label[p[old]]
        out.append(tuple(q))
    return tuple(out)


def canonical_transitive(images: Sequence[Perm]) -> tuple[Perm, ...]:
    """Canonical form of a transitive generator-image tuple under
    simultaneous conjugation: minimum over base points of the BFS
    relabeling."""
    degree = len(images[0])
    best = None
    for start in range(degree):
        label = _bfs_labeling(images, start)
        cand = _relabel(images, label, degree)
        if best is None or cand < best:
            best = cand
    return best


def canonical_action(images: Sequence[Perm], strip_fixed: bool = False
                     ) -> tuple[Perm, ...]:
    """Canonical form of an arbitrary generator-image tuple: orbits are
    canonicalized independently, sorted, and concatenated.  With
    ``strip_fixed`` the globally fixed points are dropped first (a tuple with
    no moved points canonicalizes to identities of degree 1)."""
    degree = len(images[0])
    points = range(degree)
    if strip_fixed:
        moved = [x for x in points if any(p[x] != x for p in images)]
        if not moved:
            return tuple(identity_perm(1) for _ in images)
        squeeze = {x: i for i, x in enumerate(moved)}
        images = [tuple(squeeze[p[x]] for x in moved) for p in images]
        degree = len(moved)

    blocks = []
    for orbit in orbits(images, degree):
        squeeze = {x: i for i, x in enumerate(orbit)}
        sub = [tuple(squeeze[p[x]] for x in orbit) for p in images]
        blocks.append((len(orbit), canonical_transitive(sub)))
    blocks.sort()

    out: list[list[int]] = [[] for _ in images]
    offset = 0
    for size, tup in blocks:
        for gi, p in enumerate(tup):
            out[gi].extend(v + offset for v in p)
        offset += size
    return tuple(tuple(col) for col in out)

"""Planar-diagram codes and the Wirtinger presentation they induce.

A code is a list of 4-tuples of edge labels, one tuple per crossing, read
counterclockwise starting from the incoming under-edge.  Edges are numbered
1..2n consecutively along the knot, so the outgoing under-edge is i+1 (mod
2n) and the two over-edges at a crossing are consecutive as well; codes that
break this (multi-component links, scrambled labels) are rejected.

Arcs of the diagram are the over-edge equivalence classes; one generator per
arc, one conjugation relator per crossing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentations import KnotGroupData, Presentation, validate_knot_group
from .words import Word


class PDCodeError(ValueError):
    """Malformed, inconsistent, or multi-component planar-diagram code."""


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self) -> None:
        crossings = tuple(tuple(c) for c in self.crossings)
        if not crossings:
            raise PDCodeError("empty code")
        if any(len(c) != 4 for c in crossings):
            raise PDCodeError("each crossing needs exactly 4 edge labels")
        n2 = 2 * len(crossings)
        counts: dict[int, int] = {}
        for c in crossings:
            for e in c:
                counts[e] = counts.get(e, 0) + 1
        if sorted(counts) != list(range(1, n2 + 1)):
            raise PDCodeError(f"edge labels must be exactly 1..{n2}")
        if any(v != 2 for v in counts.values()):
            bad = [e for e, v in counts.items() if v != 2]
            raise PDCodeError(f"edge labels {sorted(bad)} do not occur exactly twice")
        object.__setattr__(self, "crossings", crossings)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)


def wirtinger_from_pd(pd: PDCode, *, require_knot: bool = True,
                      label: str = "") -> KnotGroupData:
    """Wirtinger presentation of the knot group of a single-component code.

    Generators are the diagram arcs (named x1, x2, ... in order of their
    smallest edge label); the meridian is the arc containing edge 1.  Each
    crossing contributes the length-4 relator saying the outgoing under-arc
    is the over-arc conjugate of the incoming one.
    """
    n2 = 2 * pd.n_crossings

    def succ(e: int) -> int:
        return e % n2 + 1

    # orientation sanity: under-edges and over-edges must both be consecutive
    for i, j, k, l in pd.crossings:
        if succ(i) != k:
            raise PDCodeError(
                f"crossing {(i, j, k, l)}: outgoing under-edge is not {succ(i)}; "
                "not a single knot with edges numbered along the orientation")
        if succ(j) != l and succ(l) != j:
            raise PDCodeError(
                f"crossing {(i, j, k, l)}: over-edges {j},{l} are not consecutive; "
                "not a single knot with edges numbered along the orientation")

    # arcs: union the over pair at each crossing
    parent = list(range(n2 + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, j, _, l in pd.crossings:
        ri, rj = find(j), find(l)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    arc_of: dict[int, int] = {}
    arc_reps = sorted({find(e) for e in range(1, n2 + 1)})
    index = {rep: i for i, rep in enumerate(arc_reps)}
    for e in range(1, n2 + 1):
        arc_of[e] = index[find(e)]

    names = tuple(f"x{i + 1}" for i in range(len(arc_reps)))
    relators = []
    for i, j, k, l in pd.crossings:
        over = arc_of[j]
        sign = -1 if succ(j) == l else 1
        relators.append(Word.gen(over, sign) * Word.gen(arc_of[i])
                        * Word.gen(over, -sign) * Word.gen(arc_of[k], -1))
    pres = Presentation(generator_names=names, relators=tuple(relators))
    data = KnotGroupData(presentation=pres, meridian=Word.gen(arc_of[1]),
                         label=label)
    if require_knot:
        report = validate_knot_group(data)
        if not report.passed:
            from .presentations import KnotValidationError
            raise KnotValidationError(report)
    return data

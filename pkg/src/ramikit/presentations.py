"""Finitely presented groups, knot-group data, and homological validation.

A Presentation holds named generators and freely+cyclically reduced relators.
KnotGroupData adds a distinguished meridian word (and optionally a longitude)
and can be validated homologically: the abelianization must be infinite
cyclic, the meridian must generate it, and the longitude must die in it.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field

from .linalg import AbelianInvariants, cokernel_invariants, smith_normal_form
from .words import Word, cyclically_reduce

_NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


class KnotValidationError(ValueError):
    """The presentation data fails one of the knot-group checks."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        failed = ", ".join(name for name, ok, _ in report.checks if not ok)
        super().__init__(f"knot-group validation failed: {failed}")


@dataclass(frozen=True)
class Presentation:
    """Generators and relators.  Relators are normalized on construction:
    freely and cyclically reduced, with empty relators dropped (warning)."""

    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        names = tuple(self.generator_names)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        for name in names:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad generator name {name!r} "
                                 "(want lowercase letter then [a-z0-9_]*)")
        cleaned = []
        for rel in self.relators:
            reduced = cyclically_reduce(Word(rel))
            if reduced.max_generator() >= len(names):
                raise ValueError("relator uses a generator index out of range")
            if reduced.is_identity:
                if not Word(rel).is_identity:
                    warnings.warn("dropping relator that reduces to the identity")
                continue
            cleaned.append(reduced)
        object.__setattr__(self, "generator_names", names)
        object.__setattr__(self, "relators", tuple(cleaned))

    @property
    def n_generators(self) -> int:
        return len(self.generator_names)

    def exponent_matrix(self) -> list[list[int]]:
        """One row per relator, one column per generator."""
        return [r.exponent_vector(self.n_generators) for r in self.relators]

    def word(self, letters) -> Word:
        w = Word(letters)
        if w.max_generator() >= self.n_generators:
            raise ValueError("word uses a generator index out of range")
        return w


def abelianization(pres: Presentation) -> AbelianInvariants:
    """Invariant factors of the abelianized group."""
    return cokernel_invariants(pres.exponent_matrix(), pres.n_generators)


def infinite_cyclic_degree(pres: Presentation) -> list[int]:
    """Degrees of the generators under a surjection onto the free rank-1 part
    of the abelianization.  Requires free rank exactly 1; the sign is fixed so
    the first generator of nonzero degree is positive.
    """
    mat = pres.exponent_matrix()
    inv = cokernel_invariants(mat, pres.n_generators)
    if inv.free_rank != 1:
        raise KnotValidationError(ValidationReport(checks=(
            ("abelianization infinite cyclic", False, str(inv)),)))
    if mat:
        diag, _, right = smith_normal_form(mat)
    else:
        diag, right = [], [[1 if i == j else 0 for j in range(pres.n_generators)]
                           for i in range(pres.n_generators)]
    rank = sum(1 for d in diag if d != 0)
    # the free coordinate of v |-> v . right sits past the nonzero diagonal
    degrees = [right[i][rank] for i in range(pres.n_generators)]
    lead = next((d for d in degrees if d != 0), 1)
    if lead < 0:
        degrees = [-d for d in degrees]
    return degrees


@dataclass(frozen=True)
class ValidationReport:
    """Pass/fail entries of the knot-group checks."""

    checks: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def __str__(self) -> str:
        return "; ".join(f"{name}: {'pass' if ok else 'FAIL'}" + (f" ({msg})" if msg else "")
                         for name, ok, msg in self.checks)


@dataclass(frozen=True)
class KnotGroupData:
    """A presentation with its meridian word, optional longitude, and label."""

    presentation: Presentation
    meridian: Word
    longitude: Word | None = None
    label: str = ""

    def __post_init__(self) -> None:
        n = self.presentation.n_generators
        if self.meridian.max_generator() >= n:
            raise ValueError("meridian uses a generator index out of range")
        if self.longitude is not None and self.longitude.max_generator() >= n:
            raise ValueError("longitude uses a generator index out of range")

    def meridian_degrees(self) -> list[int]:
        """Generator degrees normalized so the meridian has degree +1."""
        degrees = infinite_cyclic_degree(self.presentation)
        m_deg = sum(degrees[g] * s for g, s in self.meridian)
        if abs(m_deg) != 1:
            raise KnotValidationError(ValidationReport(checks=(
                ("meridian generates the abelianization", False,
                 f"meridian degree {m_deg}"),)))
        return degrees if m_deg == 1 else [-d for d in degrees]

    def word_degree(self, w: Word) -> int:
        degrees = self.meridian_degrees()
        return sum(degrees[g] * s for g, s in w)


def validate_knot_group(data: KnotGroupData) -> ValidationReport:
    """Run the homological knot-group checks and report each outcome."""
    pres = data.presentation
    inv = abelianization(pres)
    checks: list[tuple[str, bool, str]] = []
    ab_ok = inv.free_rank == 1 and not inv.torsion
    checks.append(("abelianization infinite cyclic", ab_ok, str(inv)))

    if ab_ok:
        degrees = infinite_cyclic_degree(pres)
        m_deg = sum(degrees[g] * s for g, s in data.meridian)
        checks.append(("meridian generates the abelianization",
                       abs(m_deg) == 1, f"meridian degree {m_deg}"))
    else:
        checks.append(("meridian generates the abelianization", False,
                       "abelianization is not infinite cyclic"))

    if data.longitude is not None:
        if mat := pres.exponent_matrix():
            diag, _, right = smith_normal_form(mat)
        else:
            diag, right = [], [[1 if i == j else 0 for j in range(pres.n_generators)]
                               for i in range(pres.n_generators)]
        vec = data.longitude.exponent_vector(pres.n_generators)
        coords = [sum(vec[i] * right[i][j] for i in range(pres.n_generators))
                  for j in range(pres.n_generators)]
        rank = sum(1 for d in diag if d != 0)
        null = all(coords[j] % diag[j] == 0 for j in range(rank)) \
            and all(c == 0 for c in coords[rank:])
        checks.append(("longitude null-homologous", null, ""))
    return ValidationReport(checks=tuple(checks))

"""Finitely generated cones of desirable gambles.

A cone is described by a finite assessment of gambles, an optional
lineality basis (a linear subspace added to every element), and the
implicit positive orthant: the represented set is the positive hull of
the assessment together with all nonzero nonnegative gambles, shifted by
the lineality space.  Every query reduces to an exact rational linear
program:

* coherence, as avoiding non-positivity: no normalized nonnegative
  combination of assessment gambles and unit indicators, plus a lineality
  shift, is pointwise nonpositive;
* membership in the natural extension: the queried gamble decomposes
  over generators, indicators, and lineality with a nonzero nonnegative
  part;
* lower prevision: the largest constant whose subtraction keeps the
  gamble inside the cone.

Cones are immutable; the coherence verdict is computed once and cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence as SequenceABC

from .gambles import Gamble, Point, RationalLike, Space, _as_fraction
from .lp import LpProblem, solve

__all__ = [
    "AvoidanceReport",
    "DesirCone",
    "IncoherentConeError",
    "MemberReport",
    "NonPositivityWitness",
    "PrevisionValue",
    "avoids_nonpositivity",
    "is_marginally_desirable",
    "lower_prevision",
    "natural_extension_member",
    "membership_report",
    "updated_member",
    "upper_prevision",
]


@dataclass(frozen=True)
class NonPositivityWitness:
    """A normalized combination certifying failure to avoid non-positivity.

    The weights satisfy: generator and indicator weights are nonnegative
    and sum to one, lineality weights are unrestricted, and the combined
    gamble is pointwise nonpositive.
    """

    generator_weights: tuple[Fraction, ...]
    indicator_weights: tuple[tuple[Point, Fraction], ...]
    lineality_weights: tuple[Fraction, ...]
    combination: Gamble


@dataclass(frozen=True)
class AvoidanceReport:
    avoids: bool
    witness: Optional[NonPositivityWitness] = None


@dataclass(frozen=True)
class MemberReport:
    """Membership verdict with, when positive, an explicit decomposition.

    The decomposition writes the queried gamble as a nonnegative
    combination of generators and unit indicators plus a lineality
    shift, with the nonnegative part not identically zero.
    """

    member: bool
    generator_weights: tuple[Fraction, ...] = ()
    indicator_weights: tuple[tuple[Point, Fraction], ...] = ()
    lineality_weights: tuple[Fraction, ...] = ()


@dataclass(frozen=True)
class PrevisionValue:
    """An exact prevision: a rational number or an unboundedness marker."""

    kind: str
    value: Optional[Fraction] = None

    _KINDS = ("value", "unbounded_above", "unbounded_below")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown prevision kind {self.kind!r}")
        if (self.kind == "value") != (self.value is not None):
            raise ValueError("a finite prevision carries a value, markers do not")

    @classmethod
    def of(cls, value: RationalLike) -> PrevisionValue:
        return cls("value", _as_fraction(value))

    @classmethod
    def unbounded_above(cls) -> PrevisionValue:
        return cls("unbounded_above")

    @classmethod
    def unbounded_below(cls) -> PrevisionValue:
        return cls("unbounded_below")

    @property
    def is_finite(self) -> bool:
        return self.kind == "value"

    def __neg__(self) -> PrevisionValue:
        if self.kind == "value":
            assert self.value is not None
            return PrevisionValue.of(-self.value)
        if self.kind == "unbounded_above":
            return PrevisionValue.unbounded_below()
        return PrevisionValue.unbounded_above()


class IncoherentConeError(ValueError):
    """Raised when a query requires coherence the cone does not have."""

    def __init__(self, witness: Optional[NonPositivityWitness]) -> None:
        super().__init__(
            "the assessment admits a nonpositive combination; "
            "its natural extension is the whole gamble space"
        )
        self.witness = witness


def _common_space(
    gambles: Iterable[Gamble], space: Optional[Space]
) -> Optional[Space]:
    for g in gambles:
        if space is None:
            space = g.space
        elif g.space != space:
            raise ValueError("all gambles must share one space")
    return space


def avoids_nonpositivity(
    assessment: SequenceABC[Gamble],
    lineality: SequenceABC[Gamble] = (),
    space: Optional[Space] = None,
) -> AvoidanceReport:
    """Decide whether an assessment avoids non-positivity.

    The decision asks for a normalized nonnegative combination of the
    assessment gambles and the unit indicators, shifted by an arbitrary
    lineality combination, that is pointwise nonpositive.  No such
    combination means the assessment is a sound starting point: its
    natural extension is coherent.  When one exists it is returned as an
    explicit witness.
    """
    assessment = tuple(assessment)
    lineality = tuple(lineality)
    space = _common_space(assessment, space)
    space = _common_space(lineality, space)
    if space is None:
        return AvoidanceReport(True)

    points = space.points()
    variables = (
        [(f"g{i}", "nonneg") for i in range(len(assessment))]
        + [(f"d{i}", "nonneg") for i in range(len(points))]
        + [(f"u{j}", "free") for j in range(len(lineality))]
    )
    inequalities = []
    for w, _point in enumerate(points):
        row: dict[str, Fraction] = {f"d{w}": Fraction(1)}
        for i, g in enumerate(assessment):
            if g.values[w]:
                row[f"g{i}"] = g.values[w]
        for j, v in enumerate(lineality):
            if v.values[w]:
                row[f"u{j}"] = v.values[w]
        inequalities.append((row, Fraction(0)))
    normalization = {f"g{i}": Fraction(1) for i in range(len(assessment))}
    normalization.update({f"d{w}": Fraction(1) for w in range(len(points))})

    problem = LpProblem(
        variables,
        equalities=[(normalization, Fraction(1))],
        inequalities=inequalities,
    )
    outcome = solve(problem)
    if not outcome.is_feasible:
        return AvoidanceReport(True)

    assert outcome.witness is not None
    gw = tuple(outcome.witness[f"g{i}"] for i in range(len(assessment)))
    iw = tuple(
        (points[w], outcome.witness[f"d{w}"])
        for w in range(len(points))
        if outcome.witness[f"d{w}"]
    )
    lw = tuple(outcome.witness[f"u{j}"] for j in range(len(lineality)))
    combination = Gamble.zero(space)
    for weight, g in zip(gw, assessment):
        if weight:
            combination = combination + weight * g
    for point, weight in iw:
        combination = combination + weight * Gamble.indicator(space, [point])
    for weight, v in zip(lw, lineality):
        if weight:
            combination = combination + weight * v
    return AvoidanceReport(False, NonPositivityWitness(gw, iw, lw, combination))


class DesirCone:
    """An immutable finitely generated cone of desirable gambles.

    The first coherence query runs the avoidance check and caches its
    report; afterwards every query is a pure function of the cone value.
    """

    __slots__ = ("_space", "_generators", "_lineality", "_report")

    def __init__(
        self,
        space: Space,
        generators: SequenceABC[Gamble] = (),
        lineality: SequenceABC[Gamble] = (),
    ) -> None:
        self._space = space
        self._generators = tuple(generators)
        self._lineality = tuple(lineality)
        for g in self._generators + self._lineality:
            if g.space != space:
                raise ValueError("all gambles must live on the cone's space")
        self._report: Optional[AvoidanceReport] = None

    @property
    def space(self) -> Space:
        return self._space

    @property
    def generators(self) -> tuple[Gamble, ...]:
        return self._generators

    @property
    def lineality(self) -> tuple[Gamble, ...]:
        return self._lineality

    def avoidance(self) -> AvoidanceReport:
        if self._report is None:
            self._report = avoids_nonpositivity(
                self._generators, self._lineality, self._space
            )
        return self._report

    @property
    def is_coherent(self) -> bool:
        return self.avoidance().avoids

    def ensure_coherent(self) -> None:
        report = self.avoidance()
        if not report.avoids:
            raise IncoherentConeError(report.witness)

    def __repr__(self) -> str:
        return (
            f"DesirCone(space={self._space!r}, generators={len(self._generators)}, "
            f"lineality={len(self._lineality)})"
        )


def _check_query_gamble(cone: DesirCone, f: Gamble) -> None:
    if f.space != cone.space:
        raise ValueError("the queried gamble lives on a different space")


def membership_report(cone: DesirCone, f: Gamble) -> MemberReport:
    """Membership of f in the cone, with a decomposition when it holds.

    The gamble belongs to the cone exactly when it is nonzero and splits
    into a nonnegative combination of generators and unit indicators
    plus a lineality shift, with the nonnegative part not identically
    zero.  That last requirement is what keeps the lineality space
    itself out of the cone; it is enforced by maximizing the total
    nonnegative weight and demanding a positive optimum.
    """
    cone.ensure_coherent()
    _check_query_gamble(cone, f)
    if f.is_zero():
        return MemberReport(False)

    generators = cone.generators
    lineality = cone.lineality
    points = cone.space.points()
    variables = (
        [(f"g{i}", "nonneg") for i in range(len(generators))]
        + [(f"d{w}", "nonneg") for w in range(len(points))]
        + [(f"u{j}", "free") for j in range(len(lineality))]
    )
    equalities = []
    for w, _point in enumerate(points):
        row: dict[str, Fraction] = {f"d{w}": Fraction(1)}
        for i, g in enumerate(generators):
            if g.values[w]:
                row[f"g{i}"] = g.values[w]
        for j, v in enumerate(lineality):
            if v.values[w]:
                row[f"u{j}"] = v.values[w]
        equalities.append((row, f.values[w]))
    objective = {f"g{i}": Fraction(1) for i in range(len(generators))}
    objective.update({f"d{w}": Fraction(1) for w in range(len(points))})

    problem = LpProblem(variables, equalities=equalities, objective=(objective, "max"))
    outcome = solve(problem)
    if outcome.status == "infeasible":
        return MemberReport(False)
    if outcome.status == "bounded" and outcome.value == 0:
        return MemberReport(False)

    assert outcome.witness is not None
    gw = tuple(outcome.witness[f"g{i}"] for i in range(len(generators)))
    iw = tuple(
        (points[w], outcome.witness[f"d{w}"])
        for w in range(len(points))
        if outcome.witness[f"d{w}"]
    )
    lw = tuple(outcome.witness[f"u{j}"] for j in range(len(lineality)))
    return MemberReport(True, gw, iw, lw)


def natural_extension_member(cone: DesirCone, f: Gamble) -> bool:
    """Does f belong to the natural extension the cone represents?"""
    return membership_report(cone, f).member


def lower_prevision(cone: DesirCone, f: Gamble) -> PrevisionValue:
    """Supremum price mu such that f minus mu stays in the cone.

    Computed as an exact linear program maximizing mu subject to the
    shifted gamble decomposing over generators, indicators, and
    lineality.  For a coherent cone the optimum is finite and lies
    between the minimum and maximum of f; an incoherent cone prices
    every gamble arbitrarily high, reported as an unbounded marker.
    """
    _check_query_gamble(cone, f)
    generators = cone.generators
    lineality = cone.lineality
    points = cone.space.points()
    variables = (
        [("mu", "free")]
        + [(f"g{i}", "nonneg") for i in range(len(generators))]
        + [(f"d{w}", "nonneg") for w in range(len(points))]
        + [(f"u{j}", "free") for j in range(len(lineality))]
    )
    equalities = []
    for w, _point in enumerate(points):
        row: dict[str, Fraction] = {"mu": Fraction(1), f"d{w}": Fraction(1)}
        for i, g in enumerate(generators):
            if g.values[w]:
                row[f"g{i}"] = g.values[w]
        for j, v in enumerate(lineality):
            if v.values[w]:
                row[f"u{j}"] = v.values[w]
        equalities.append((row, f.values[w]))

    problem = LpProblem(variables, equalities=equalities, objective=({"mu": 1}, "max"))
    outcome = solve(problem)
    if outcome.status == "unbounded":
        return PrevisionValue.unbounded_above()
    if outcome.status != "bounded":
        raise AssertionError("the prevision program is always feasible")
    assert outcome.value is not None
    return PrevisionValue.of(outcome.value)


def upper_prevision(cone: DesirCone, f: Gamble) -> PrevisionValue:
    """Infimum selling price, conjugate to the lower prevision."""
    return -lower_prevision(cone, -f)


def is_marginally_desirable(cone: DesirCone, f: Gamble) -> bool:
    """Is the lower prevision of f exactly zero?"""
    cone.ensure_coherent()
    return lower_prevision(cone, f) == PrevisionValue.of(0)


def updated_member(cone: DesirCone, event: Iterable[Point], f: Gamble) -> bool:
    """Membership in the cone updated on observing the event.

    The updated cone keeps exactly the members vanishing outside the
    event, so the query is a support check followed by plain membership.
    """
    _check_query_gamble(cone, f)
    event_points = set(event)
    if not event_points:
        raise ValueError("cannot update on an empty event")
    index = {p: i for i, p in enumerate(cone.space.points())}
    for p in event_points:
        if p not in index:
            raise KeyError(f"{p!r} is not a point of {cone.space}")
    outside = [i for p, i in index.items() if p not in event_points]
    if any(f.values[i] != 0 for i in outside):
        return False
    return natural_extension_member(cone, f)

"""World model for wireless neighbor discovery verification.

A *setting* fixes node identities, planar locations, correct/adversarial
types and a time-varying directed link schedule.  A *trace* is a finite
set of timed events (omnidirectional broadcast, directional cast,
reception, neighbor declaration) describing one execution.  This module
provides the geometric and temporal primitives (distance, time of
flight, link coverage, antenna sectors), the censored local-view
projection that each node observes, and the physical-consistency check
tying every reception to exactly one transmission and every
transmission to all receptions the link state enables.

Conventions baked in here:

- angles are expressed as rational multiples of pi (so 1/2 means a
  quarter turn); sector boundaries at quarter-turn multiples are decided
  with exact rational arithmetic, all other boundaries fall back to
  floating point,
- a directional sector is closed at both boundary rays and contains its
  apex, which makes a full-circle directional cast behave exactly like a
  broadcast, including self-reception,
- every node always has its own self-link up, so any transmission is
  also received by its sender at the same instant,
- link up-phases are half-open intervals [start, end).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .rational import EXACT, Num, Real

Point = tuple[Fraction, Fraction]
NodeId = str

CORRECT = "correct"
ADVERSARIAL = "adversarial"

T_FLAVOR = "T"
TL_FLAVOR = "TL"

FULL_TURN = Fraction(2)  # angles are in units of pi


class UnknownNode(ValueError):
    """A node identifier is not part of the relevant setting."""


class FlavorMismatch(ValueError):
    """A location-aware view was requested without a setting."""


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class SystemParams:
    """Global physical parameters shared by every checker.

    v              signal speed on the wireless channel (distance/time)
    v_adv          information speed on the adversary-only channel
    nd_range       distance up to which neighbor discovery must work
    delta_relay    minimum processing delay of an adversarial relay
    msg_duration_default   transmission duration used for beacons
    """

    v: Fraction
    v_adv: Fraction
    nd_range: Fraction
    delta_relay: Fraction
    msg_duration_default: Fraction

    def __post_init__(self) -> None:
        if self.v <= 0:
            raise ValueError("v must be > 0")
        if self.v_adv < self.v:
            raise ValueError("v_adv must be >= v")
        if self.nd_range <= 0:
            raise ValueError("nd_range must be > 0")
        if self.delta_relay < 0:
            raise ValueError("delta_relay must be >= 0")
        if self.msg_duration_default <= 0:
            raise ValueError("msg_duration_default must be > 0")


# ---------------------------------------------------------------------------
# messages


@dataclass(frozen=True)
class Opaque:
    """Uninterpreted payload; identity is the token."""

    token: str
    duration: Fraction

    def __post_init__(self) -> None:
        _check_duration(self.duration)

    def key(self) -> tuple:
        return ("opaque", self.token, self.duration)


@dataclass(frozen=True)
class BeaconT:
    """Authenticated beacon carrying its creation time.

    Authentication is symbolic: the creator field cannot be forged, only
    copied, which is what the adversary checkers rely on.
    """

    creator: NodeId
    beacon_time: Fraction
    duration: Fraction

    def __post_init__(self) -> None:
        _check_duration(self.duration)
        if self.beacon_time < 0:
            raise ValueError("beacon_time must be >= 0")

    def key(self) -> tuple:
        return ("beacon-t", self.creator, self.beacon_time, self.duration)


@dataclass(frozen=True)
class BeaconTL:
    """Authenticated beacon carrying creation time and claimed location."""

    creator: NodeId
    beacon_time: Fraction
    beacon_loc: Point
    duration: Fraction

    def __post_init__(self) -> None:
        _check_duration(self.duration)
        if self.beacon_time < 0:
            raise ValueError("beacon_time must be >= 0")

    def key(self) -> tuple:
        return (
            "beacon-tl",
            self.creator,
            self.beacon_time,
            self.beacon_loc[0],
            self.beacon_loc[1],
            self.duration,
        )


Message = Union[Opaque, BeaconT, BeaconTL]


def _check_duration(duration: Fraction) -> None:
    if duration <= 0:
        raise ValueError("message duration must be > 0")


# ---------------------------------------------------------------------------
# events


@dataclass(frozen=True)
class Bcast:
    actor: NodeId
    start: Fraction
    msg: Message

    def __post_init__(self) -> None:
        _check_start(self.start)

    def sort_key(self) -> tuple:
        return (self.start, self.actor, 0) + self.msg.key()


@dataclass(frozen=True)
class Dcast:
    """Directional transmission over the closed sector [direction, direction+angle].

    direction is in [0, 2) and angle in (0, 2], both in units of pi.
    """

    actor: NodeId
    start: Fraction
    direction: Fraction
    angle: Fraction
    msg: Message

    def __post_init__(self) -> None:
        _check_start(self.start)
        if not 0 <= self.direction < FULL_TURN:
            raise ValueError("direction must be in [0, 2) (units of pi)")
        if not 0 < self.angle <= FULL_TURN:
            raise ValueError("angle must be in (0, 2] (units of pi)")

    def sort_key(self) -> tuple:
        return (self.start, self.actor, 1, self.direction, self.angle) + self.msg.key()


@dataclass(frozen=True)
class Receive:
    actor: NodeId
    start: Fraction
    sender: NodeId
    msg: Message

    def __post_init__(self) -> None:
        _check_start(self.start)

    def sort_key(self) -> tuple:
        return (self.start, self.actor, 2, self.sender) + self.msg.key()


@dataclass(frozen=True)
class Neighbor:
    """Declaration by `actor` that `peer` was its neighbor at `peer_time`."""

    actor: NodeId
    start: Fraction
    peer: NodeId
    peer_time: Fraction

    def __post_init__(self) -> None:
        _check_start(self.start)
        if self.peer_time < 0:
            raise ValueError("peer_time must be >= 0")

    def sort_key(self) -> tuple:
        return (self.start, self.actor, 3, self.peer, self.peer_time)


Event = Union[Bcast, Dcast, Receive, Neighbor]


def _check_start(start: Fraction) -> None:
    if start < 0:
        raise ValueError("event start must be >= 0")


def event_end(e: Event) -> Fraction:
    """Events carrying a message span [start, start + duration]; declarations are instantaneous."""
    if isinstance(e, Neighbor):
        return e.start
    return e.start + e.msg.duration


class Trace:
    """Immutable finite event set, stored in canonical order.

    Construction deduplicates and sorts, so two traces built from the
    same events in any order compare (and serialize) identically.
    """

    __slots__ = ("events", "_set")

    def __init__(self, events: Iterable[Event] = ()):
        ordered = sorted(set(events), key=lambda e: e.sort_key())
        self.events: tuple[Event, ...] = tuple(ordered)
        self._set: frozenset[Event] = frozenset(ordered)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def __contains__(self, event: Event) -> bool:
        return event in self._set

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Trace) and self.events == other.events

    def __hash__(self) -> int:
        return hash(self.events)

    def __repr__(self) -> str:
        return f"Trace({len(self.events)} events)"

    def union(self, more: Iterable[Event]) -> "Trace":
        return Trace(self.events + tuple(more))

    def of_kind(self, kind: type) -> Iterator[Event]:
        return (e for e in self.events if isinstance(e, kind))

    def by_actor(self, node: NodeId) -> Iterator[Event]:
        return (e for e in self.events if e.actor == node)

    def mentioned_nodes(self) -> set[NodeId]:
        nodes: set[NodeId] = set()
        for e in self.events:
            nodes.add(e.actor)
            if isinstance(e, Receive):
                nodes.add(e.sender)
            elif isinstance(e, Neighbor):
                nodes.add(e.peer)
        return nodes


# ---------------------------------------------------------------------------
# settings

Interval = tuple[Fraction, Optional[Fraction]]  # [start, end), end=None means unbounded


class Setting:
    """Static world: nodes, locations, types and the directed link schedule.

    Undeclared directed links are permanently down; self-links are
    implicitly up forever and may not be declared.
    """

    __slots__ = ("nodes", "loc", "node_type", "link_schedule")

    def __init__(
        self,
        nodes: Iterable[NodeId],
        loc: Mapping[NodeId, Point],
        node_type: Mapping[NodeId, str],
        link_schedule: Optional[Mapping[tuple[NodeId, NodeId], Sequence[Interval]]] = None,
    ):
        self.nodes: tuple[NodeId, ...] = tuple(sorted(nodes))
        self.loc: dict[NodeId, Point] = dict(loc)
        self.node_type: dict[NodeId, str] = dict(node_type)
        seen_locs: set[Point] = set()
        for node in self.nodes:
            if node not in self.loc or node not in self.node_type:
                raise UnknownNode(f"node {node!r} lacks a location or type")
            if self.node_type[node] not in (CORRECT, ADVERSARIAL):
                raise ValueError(f"bad node type for {node!r}")
            p = self.loc[node]
            if p in seen_locs:
                raise ValueError(f"two nodes share location {p}")
            seen_locs.add(p)
        normalized: dict[tuple[NodeId, NodeId], tuple[Interval, ...]] = {}
        for (a, b), intervals in (link_schedule or {}).items():
            if a not in self.loc or b not in self.loc:
                raise UnknownNode(f"link ({a!r}, {b!r}) references undeclared node")
            if a == b:
                raise ValueError("self-links are implicit and may not be declared")
            merged = _normalize_intervals(intervals)
            if merged:
                normalized[(a, b)] = merged
        self.link_schedule: dict[tuple[NodeId, NodeId], tuple[Interval, ...]] = normalized

    @property
    def correct_nodes(self) -> tuple[NodeId, ...]:
        return tuple(n for n in self.nodes if self.node_type[n] == CORRECT)

    @property
    def adversarial_nodes(self) -> tuple[NodeId, ...]:
        return tuple(n for n in self.nodes if self.node_type[n] == ADVERSARIAL)

    def is_adversarial(self, node: NodeId) -> bool:
        return self.node_type.get(node) == ADVERSARIAL

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Setting)
            and self.nodes == other.nodes
            and self.loc == other.loc
            and self.node_type == other.node_type
            and self.link_schedule == other.link_schedule
        )

    def __repr__(self) -> str:
        return f"Setting(nodes={self.nodes!r})"


def _normalize_intervals(intervals: Sequence[Interval]) -> tuple[Interval, ...]:
    """Sort, validate disjointness, and merge adjacent half-open phases."""
    items = sorted(intervals, key=lambda iv: (iv[0], iv[1] is not None, iv[1] or 0))
    merged: list[list] = []
    for start, end in items:
        if start < 0:
            raise ValueError("link interval start must be >= 0")
        if end is not None and end <= start:
            raise ValueError("link interval end must exceed its start")
        if merged and merged[-1][1] is None:
            raise ValueError("overlapping link intervals")
        if merged and start < merged[-1][1]:
            raise ValueError("overlapping link intervals")
        if merged and start == merged[-1][1]:
            merged[-1][1] = end
        else:
            merged.append([start, end])
    return tuple((s, e) for s, e in merged)


def sq_dist(p: Point, q: Point) -> Fraction:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def dist(setting: Setting, a: NodeId, b: NodeId, num: Num = EXACT) -> Real:
    """Euclidean distance between two nodes of the setting."""
    for node in (a, b):
        if node not in setting.loc:
            raise UnknownNode(f"node {node!r} not in setting")
    if a == b:
        return Fraction(0)
    return num.sqrt(sq_dist(setting.loc[a], setting.loc[b]))


def time_of_flight(
    setting: Setting, params: SystemParams, a: NodeId, b: NodeId, num: Num = EXACT
) -> Real:
    return dist(setting, a, b, num) / params.v


def link_up_over(setting: Setting, a: NodeId, b: NodeId, t0: Real, t1: Real) -> bool:
    """True iff the directed link a -> b is up at every point of the closed interval [t0, t1]."""
    if t0 > t1:
        raise ValueError("empty interval")
    if a == b:
        return True
    cursor = t0
    for start, end in setting.link_schedule.get((a, b), ()):
        if start > cursor:
            return False
        if end is None or end > t1:
            return True
        if end > cursor:
            cursor = end
    return False


def link_up_at(setting: Setting, a: NodeId, b: NodeId, t: Real) -> bool:
    return link_up_over(setting, a, b, t, t)


def link_up(setting: Setting, a: NodeId, b: NodeId, interval: tuple[Real, Real]) -> bool:
    """Closed-interval link coverage; see link_up_over."""
    return link_up_over(setting, a, b, interval[0], interval[1])


_QUARTER_VECTORS = {
    Fraction(0): (Fraction(1), Fraction(0)),
    Fraction(1, 2): (Fraction(0), Fraction(1)),
    Fraction(1): (Fraction(-1), Fraction(0)),
    Fraction(3, 2): (Fraction(0), Fraction(-1)),
}


def _direction_vector(units: Fraction) -> tuple[Real, Real]:
    u = units % FULL_TURN
    exact = _QUARTER_VECTORS.get(u)
    if exact is not None:
        return exact
    radians = math.pi * float(u)
    return (math.cos(radians), math.sin(radians))


def _cross(a: tuple[Real, Real], b: tuple[Real, Real]) -> Real:
    return a[0] * b[1] - a[1] * b[0]


def inrange(
    setting: Setting, a: NodeId, direction: Fraction, angle: Fraction, b: NodeId
) -> bool:
    """Sector membership test for directional transmission coverage.

    The sector is closed at both boundary rays, contains its apex, and a
    full-turn angle covers everything.  Quarter-turn boundaries are
    decided exactly; other boundaries use floating point.
    """
    if b == a or angle >= FULL_TURN:
        return True
    u = (
        setting.loc[b][0] - setting.loc[a][0],
        setting.loc[b][1] - setting.loc[a][1],
    )
    e0 = _direction_vector(direction)
    e1 = _direction_vector(direction + angle)
    if angle <= 1:
        return _cross(e0, u) >= 0 and _cross(u, e1) >= 0
    # reflex sector: everything except the strict interior of the complement
    return not (_cross(e1, u) > 0 and _cross(u, e0) > 0)


# ---------------------------------------------------------------------------
# local views


@dataclass(frozen=True)
class LocalBcast:
    start: Fraction
    msg: Message


@dataclass(frozen=True)
class LocalReceive:
    # deliberately carries no sender: a receiver cannot tell who transmitted
    start: Fraction
    msg: Message


@dataclass(frozen=True)
class LocalNeighbor:
    start: Fraction
    peer: NodeId
    peer_time: Fraction


LocalEvent = Union[LocalBcast, LocalReceive, LocalNeighbor]


@dataclass(frozen=True)
class LocalView:
    """What one node has observed strictly before a cutoff time.

    as_of=None means the complete (end-of-time) view.  The TL flavor
    additionally carries the owner's own location.
    """

    flavor: str
    owner: NodeId
    as_of: Optional[Fraction]
    owner_loc: Optional[Point]
    events: frozenset[LocalEvent]

    def receives(self) -> Iterator[LocalReceive]:
        return (e for e in self.events if isinstance(e, LocalReceive))


def project_local(
    trace: Trace,
    node: NodeId,
    as_of: Optional[Fraction] = None,
    flavor: str = T_FLAVOR,
    setting: Optional[Setting] = None,
) -> LocalView:
    """Censored projection of a trace onto one node.

    Own transmissions and declarations are visible once started;
    receptions only once fully completed (start + duration strictly
    before the cutoff).  Receptions lose their sender field.
    """
    if flavor not in (T_FLAVOR, TL_FLAVOR):
        raise ValueError(f"unknown view flavor {flavor!r}")
    if flavor == TL_FLAVOR and setting is None:
        raise FlavorMismatch("location-aware views require a setting")
    if setting is not None and node not in setting.loc:
        raise UnknownNode(f"node {node!r} not in setting")
    visible: list[LocalEvent] = []
    for e in trace:
        if e.actor != node:
            continue
        if isinstance(e, Bcast):
            if as_of is None or e.start < as_of:
                visible.append(LocalBcast(e.start, e.msg))
        elif isinstance(e, Receive):
            if as_of is None or e.start + e.msg.duration < as_of:
                visible.append(LocalReceive(e.start, e.msg))
        elif isinstance(e, Neighbor):
            if as_of is None or e.start < as_of:
                visible.append(LocalNeighbor(e.start, e.peer, e.peer_time))
    owner_loc = setting.loc[node] if (flavor == TL_FLAVOR and setting) else None
    return LocalView(flavor, node, as_of, owner_loc, frozenset(visible))


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Violation:
    rule: str
    events: tuple[Event, ...]
    detail: str


@dataclass(frozen=True)
class Verdict:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def merged(self, other: "Verdict") -> "Verdict":
        return Verdict(self.violations + other.violations)

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}


# ---------------------------------------------------------------------------
# physical consistency


def check_setting_feasible(
    trace: Trace, setting: Setting, params: SystemParams, num: Num = EXACT
) -> Verdict:
    """Check a trace against the physics of a setting.

    Three groups of rules:
    - every reception has its link up for the whole reception window and
      matches exactly one transmission (a broadcast, or a directional
      cast whose sector covers the receiver) by its sender, one flight
      time earlier,
    - every broadcast is received by every node whose incoming link from
      the sender is up over the full reception window (the sender
      included, via its self-link),
    - every directional cast is performed by an adversarial node and is
      received by exactly the covered, link-enabled nodes.
    """
    violations: list[Violation] = []
    known = set(setting.nodes)

    bcasts_by_actor: dict[NodeId, list[Bcast]] = {}
    dcasts_by_actor: dict[NodeId, list[Dcast]] = {}
    receives_by_pair: dict[tuple[NodeId, NodeId], list[Receive]] = {}
    for e in trace:
        if isinstance(e, Bcast):
            bcasts_by_actor.setdefault(e.actor, []).append(e)
        elif isinstance(e, Dcast):
            dcasts_by_actor.setdefault(e.actor, []).append(e)
        elif isinstance(e, Receive):
            receives_by_pair.setdefault((e.actor, e.sender), []).append(e)

    tof_cache: dict[tuple[NodeId, NodeId], Real] = {}

    def tof(a: NodeId, b: NodeId) -> Real:
        key = (a, b) if a <= b else (b, a)
        if key not in tof_cache:
            tof_cache[key] = time_of_flight(setting, params, a, b, num)
        return tof_cache[key]

    def receive_present(dest: NodeId, sender: NodeId, at: Real, msg: Message) -> bool:
        for r in receives_by_pair.get((dest, sender), ()):
            if r.msg == msg and num.eq(r.start, at):
                return True
        return False

    for e in trace:
        actors = [e.actor]
        if isinstance(e, Receive):
            actors.append(e.sender)
        for node in actors:
            if node not in known:
                violations.append(
                    Violation("unknown-node", (e,), f"node {node!r} is not part of the setting")
                )
        if any(node not in known for node in actors):
            continue

        if isinstance(e, Receive):
            window_end = e.start + e.msg.duration
            if not link_up_over(setting, e.sender, e.actor, e.start, window_end):
                violations.append(
                    Violation(
                        "receive-link-down",
                        (e,),
                        f"link {e.sender}->{e.actor} not up over the reception window",
                    )
                )
            send_time = e.start - tof(e.sender, e.actor)
            bcast_match = any(
                b.msg == e.msg and num.eq(b.start, send_time)
                for b in bcasts_by_actor.get(e.sender, ())
            )
            dcast_match = any(
                d.msg == e.msg
                and num.eq(d.start, send_time)
                and inrange(setting, e.sender, d.direction, d.angle, e.actor)
                for d in dcasts_by_actor.get(e.sender, ())
            )
            if bcast_match and dcast_match:
                violations.append(
                    Violation(
                        "receive-ambiguous-source",
                        (e,),
                        "reception matches both a broadcast and a directional cast",
                    )
                )
            elif not (bcast_match or dcast_match):
                violations.append(
                    Violation(
                        "receive-without-transmission",
                        (e,),
                        f"no transmission by {e.sender} one flight time earlier",
                    )
                )

        elif isinstance(e, Bcast):
            for dest in setting.nodes:
                arrival = e.start + tof(e.actor, dest)
                if link_up_over(setting, e.actor, dest, arrival, arrival + e.msg.duration):
                    if not receive_present(dest, e.actor, arrival, e.msg):
                        violations.append(
                            Violation(
                                "bcast-missing-receive",
                                (e,),
                                f"{dest} has the link up but no matching reception",
                            )
                        )

        elif isinstance(e, Dcast):
            if not setting.is_adversarial(e.actor):
                violations.append(
                    Violation(
                        "dcast-by-correct-node",
                        (e,),
                        "directional transmission is reserved to adversarial nodes",
                    )
                )
            for dest in setting.nodes:
                if not inrange(setting, e.actor, e.direction, e.angle, dest):
                    continue
                arrival = e.start + tof(e.actor, dest)
                if link_up_over(setting, e.actor, dest, arrival, arrival + e.msg.duration):
                    if not receive_present(dest, e.actor, arrival, e.msg):
                        violations.append(
                            Violation(
                                "dcast-missing-receive",
                                (e,),
                                f"{dest} is covered with the link up but no matching reception",
                            )
                        )

    return Verdict(tuple(violations))


def induced_receives(
    sends: Iterable[Event],
    setting: Setting,
    params: SystemParams,
    num: Num = EXACT,
) -> list[Receive]:
    """All receptions that the given transmissions force to exist.

    Uses the same coverage predicates as check_setting_feasible, so a
    trace assembled from sends plus their induced receives passes the
    physical-consistency check by construction.
    """
    out: list[Receive] = []
    for e in sends:
        if isinstance(e, Bcast):
            covered = setting.nodes
        elif isinstance(e, Dcast):
            covered = tuple(
                dest
                for dest in setting.nodes
                if inrange(setting, e.actor, e.direction, e.angle, dest)
            )
        else:
            continue
        for dest in covered:
            arrival = e.start + time_of_flight(setting, params, e.actor, dest, num)
            if link_up_over(setting, e.actor, dest, arrival, arrival + e.msg.duration):
                out.append(Receive(dest, arrival, e.actor, e.msg))
    return out

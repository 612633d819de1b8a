"""Protocol models and protocol-conformance checkers.

A protocol model maps a node's local view to a finite, non-empty set of
permitted actions (do nothing, broadcast a message, declare a neighbor).
Four concrete protocols are provided:

- naive:      broadcast a bare identity token, accept any received one;
- pt:         time-stamped authenticated beacons, accept a creator as a
              neighbor iff the beacon age at reception is within the
              discovery range divided by the signal speed;
- pgt:        time- and location-stamped beacons, accept iff the
              time-derived and location-derived distance estimates agree
              exactly (compared on squares, so everything stays rational);
- pgt-approx: as pgt but with measurement slack, accepting when the two
              estimates are within delta + tau of each other.

Two checking routes exist.  ``check_protocol_feasible`` is generic: it
asks the decision function to permit every broadcast and declaration a
correct node performed, and to permit idling at sampled times.  The
dedicated ``check_pt_feasible`` / ``check_pgt_feasible`` express the
same protocols as direct trace predicates and are the authority used by
the command-line checker.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

from .core import (
    Bcast,
    BeaconT,
    BeaconTL,
    FlavorMismatch,
    LocalBcast,
    LocalNeighbor,
    LocalReceive,
    LocalView,
    Message,
    Neighbor,
    NodeId,
    Opaque,
    Point,
    Receive,
    Setting,
    SystemParams,
    T_FLAVOR,
    TL_FLAVOR,
    Trace,
    Verdict,
    Violation,
    event_end,
    project_local,
    sq_dist,
)
from .rational import EXACT, Num

NAIVE = "naive"
PT = "pt"
PGT = "pgt"
PGT_APPROX = "pgt-approx"

PROTOCOL_NAMES = (NAIVE, PT, PGT, PGT_APPROX)

NAIVE_TOKEN_PREFIX = "id-"


@dataclass(frozen=True)
class EpsilonAction:
    """Do nothing (receptions excepted)."""


@dataclass(frozen=True)
class BcastAction:
    msg: Message


@dataclass(frozen=True)
class NeighborAction:
    peer: NodeId
    peer_time: Fraction


Action = Union[EpsilonAction, BcastAction, NeighborAction]

EPSILON = EpsilonAction()


@dataclass(frozen=True)
class InaccuracyParams:
    """Measurement error bounds, both expressed in time units.

    delta bounds the error of any delay measurement; tau bounds the
    location error divided by the signal speed, so the two add directly.
    """

    delta: Fraction = Fraction(0)
    tau: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.delta < 0 or self.tau < 0:
            raise ValueError("delta and tau must be >= 0")

    @property
    def window(self) -> Fraction:
        return self.delta + self.tau


@dataclass(frozen=True)
class ProtocolModel:
    name: str
    flavor: str
    decide: Callable[[LocalView], frozenset[Action]]


def protocol_flavor(name: str) -> str:
    if name in (NAIVE, PT):
        return T_FLAVOR
    if name in (PGT, PGT_APPROX):
        return TL_FLAVOR
    raise ValueError(f"unknown protocol {name!r}")


# ---------------------------------------------------------------------------
# acceptance predicates, shared by decision functions and direct checkers


def pt_accepts(params: SystemParams, receive_start: Fraction, beacon: BeaconT) -> bool:
    """Freshness rule: beacon age at reception start within range/speed (inclusive)."""
    return receive_start - beacon.beacon_time <= params.nd_range / params.v


def pgt_accepts(
    params: SystemParams,
    owner_loc: Point,
    receive_start: Fraction,
    beacon: BeaconTL,
    num: Num = EXACT,
) -> bool:
    """Exact agreement of the time- and location-derived distance estimates.

    Compared on squared distances so both sides stay rational; the time
    estimate must be non-negative since it stands for a distance.
    """
    dt = receive_start - beacon.beacon_time
    squared = sq_dist(owner_loc, beacon.beacon_loc)
    if num.exact:
        return dt >= 0 and (params.v * dt) ** 2 == squared
    return dt >= 0 and num.eq(dt, num.sqrt(squared) / params.v)


def pgt_approx_accepts(
    params: SystemParams,
    owner_loc: Point,
    receive_start: Fraction,
    beacon: BeaconTL,
    inacc: InaccuracyParams,
) -> bool:
    """|time estimate - location estimate| <= delta + tau, decided exactly.

    The location estimate is sqrt(squared)/v and may be irrational, so
    both window bounds are compared through sign-aware squaring.
    """
    dt = receive_start - beacon.beacon_time
    squared = sq_dist(owner_loc, beacon.beacon_loc)
    upper = params.v * (dt + inacc.window)
    lower = params.v * (dt - inacc.window)
    if upper < 0 or squared > upper * upper:
        return False
    return lower <= 0 or squared >= lower * lower


# ---------------------------------------------------------------------------
# decision functions


def pt_decide(view: LocalView, params: SystemParams) -> frozenset[Action]:
    if view.flavor != T_FLAVOR:
        raise FlavorMismatch("pt decides on time-only views")
    actions: set[Action] = {EPSILON}
    if view.as_of is not None:
        actions.add(
            BcastAction(BeaconT(view.owner, view.as_of, params.msg_duration_default))
        )
    # view censoring admits only fully completed receptions, so any
    # declaration offered here is automatically strictly later than the
    # end of its justifying reception
    for r in view.receives():
        if isinstance(r.msg, BeaconT) and pt_accepts(params, r.start, r.msg):
            actions.add(NeighborAction(r.msg.creator, r.start))
    return frozenset(actions)


def pgt_decide(
    view: LocalView, params: SystemParams, num: Num = EXACT
) -> frozenset[Action]:
    if view.flavor != TL_FLAVOR or view.owner_loc is None:
        raise FlavorMismatch("pgt decides on location-aware views")
    actions: set[Action] = {EPSILON}
    if view.as_of is not None:
        actions.add(
            BcastAction(
                BeaconTL(view.owner, view.as_of, view.owner_loc, params.msg_duration_default)
            )
        )
    for r in view.receives():
        if isinstance(r.msg, BeaconTL) and pgt_accepts(
            params, view.owner_loc, r.start, r.msg, num
        ):
            actions.add(NeighborAction(r.msg.creator, r.start))
    return frozenset(actions)


def pgt_approx_decide(
    view: LocalView, params: SystemParams, inacc: InaccuracyParams
) -> frozenset[Action]:
    if view.flavor != TL_FLAVOR or view.owner_loc is None:
        raise FlavorMismatch("pgt-approx decides on location-aware views")
    actions: set[Action] = {EPSILON}
    if view.as_of is not None:
        actions.add(
            BcastAction(
                BeaconTL(view.owner, view.as_of, view.owner_loc, params.msg_duration_default)
            )
        )
    for r in view.receives():
        if isinstance(r.msg, BeaconTL) and pgt_approx_accepts(
            params, view.owner_loc, r.start, r.msg, inacc
        ):
            actions.add(NeighborAction(r.msg.creator, r.start))
    return frozenset(actions)


def naive_decide(view: LocalView, params: SystemParams) -> frozenset[Action]:
    """Identity-token baseline: accepts every received identity, replayed or not."""
    if view.flavor != T_FLAVOR:
        raise FlavorMismatch("naive decides on time-only views")
    actions: set[Action] = {EPSILON}
    if view.as_of is not None:
        actions.add(
            BcastAction(
                Opaque(NAIVE_TOKEN_PREFIX + view.owner, params.msg_duration_default)
            )
        )
    for r in view.receives():
        if isinstance(r.msg, Opaque) and r.msg.token.startswith(NAIVE_TOKEN_PREFIX):
            actions.add(NeighborAction(r.msg.token[len(NAIVE_TOKEN_PREFIX):], r.start))
    return frozenset(actions)


def make_protocol(
    name: str,
    params: SystemParams,
    inacc: Optional[InaccuracyParams] = None,
    num: Num = EXACT,
) -> ProtocolModel:
    if name == NAIVE:
        return ProtocolModel(NAIVE, T_FLAVOR, lambda view: naive_decide(view, params))
    if name == PT:
        return ProtocolModel(PT, T_FLAVOR, lambda view: pt_decide(view, params))
    if name == PGT:
        return ProtocolModel(PGT, TL_FLAVOR, lambda view: pgt_decide(view, params, num))
    if name == PGT_APPROX:
        ia = inacc if inacc is not None else InaccuracyParams()
        return ProtocolModel(
            PGT_APPROX, TL_FLAVOR, lambda view: pgt_approx_decide(view, params, ia)
        )
    raise ValueError(f"unknown protocol {name!r}")


# ---------------------------------------------------------------------------
# generic conformance checking


def _epsilon_sample_times(view: LocalView) -> list[Fraction]:
    """Event boundaries of the owner, midpoints between them, zero, and one
    point past the last boundary.

    The decision functions above are constant between boundaries of the
    owner's local events, so this sample set is exhaustive for them.
    """
    bounds: set[Fraction] = {Fraction(0)}
    for e in view.events:
        bounds.add(e.start)
        if isinstance(e, (LocalBcast, LocalReceive)):
            bounds.add(e.start + e.msg.duration)
    ordered = sorted(bounds)
    samples = set(ordered)
    for left, right in zip(ordered, ordered[1:]):
        samples.add((left + right) / 2)
    samples.add(ordered[-1] + 1)
    return sorted(samples)


def check_protocol_feasible(
    trace: Trace,
    setting: Setting,
    protocol: ProtocolModel,
    params: SystemParams,
    epsilon_samples: Optional[Iterable[Fraction]] = None,
    num: Num = EXACT,
) -> Verdict:
    """Generic conformance of every correct node's behavior to a protocol model.

    Broadcasts and declarations must be permitted by the decision
    function applied to the node's view at the event's start time, and
    idling must be permitted at every sampled time that is not the start
    of one of the node's own broadcasts or declarations.  The trace is
    assumed physically consistent.
    """
    del num  # comparisons happen inside the decision functions
    violations: list[Violation] = []
    for node in setting.correct_nodes:
        complete = project_local(trace, node, None, protocol.flavor, setting)
        own_action_starts = {
            e.start
            for e in complete.events
            if isinstance(e, (LocalBcast, LocalNeighbor))
        }
        for e in trace.by_actor(node):
            if isinstance(e, Bcast):
                view = project_local(trace, node, e.start, protocol.flavor, setting)
                if BcastAction(e.msg) not in protocol.decide(view):
                    violations.append(
                        Violation(
                            "bcast-not-permitted",
                            (e,),
                            f"{protocol.name} does not allow this broadcast at {e.start}",
                        )
                    )
            elif isinstance(e, Neighbor):
                view = project_local(trace, node, e.start, protocol.flavor, setting)
                if NeighborAction(e.peer, e.peer_time) not in protocol.decide(view):
                    violations.append(
                        Violation(
                            "neighbor-not-permitted",
                            (e,),
                            f"{protocol.name} does not justify declaring {e.peer}",
                        )
                    )
        times = (
            list(epsilon_samples)
            if epsilon_samples is not None
            else _epsilon_sample_times(complete)
        )
        for t in times:
            if t in own_action_starts:
                continue
            view = project_local(trace, node, t, protocol.flavor, setting)
            if EPSILON not in protocol.decide(view):
                violations.append(
                    Violation(
                        "idle-not-permitted",
                        (),
                        f"{protocol.name} forbids {node} to idle at {t}",
                    )
                )
    return Verdict(tuple(violations))


# ---------------------------------------------------------------------------
# direct trace predicates


def check_pt_feasible(
    trace: Trace, setting: Setting, params: SystemParams, num: Num = EXACT
) -> Verdict:
    """Direct conformance to the time-stamped beacon protocol.

    Correct nodes may broadcast only beacons they created themselves,
    stamped with the transmission start time.  Every declaration must be
    backed by a reception, starting at the declared peer time, of a
    fresh beacon created by the declared peer, completed strictly before
    the declaration.
    """
    violations: list[Violation] = []
    correct = set(setting.correct_nodes)
    receives_by_actor: dict[NodeId, list[Receive]] = {}
    for r in trace.of_kind(Receive):
        receives_by_actor.setdefault(r.actor, []).append(r)

    for e in trace:
        if e.actor not in correct:
            continue
        if isinstance(e, Bcast):
            if not isinstance(e.msg, BeaconT):
                violations.append(
                    Violation(
                        "bcast-not-a-beacon", (e,), "correct nodes broadcast beacons only"
                    )
                )
            elif e.msg.creator != e.actor:
                violations.append(
                    Violation(
                        "beacon-foreign-creator",
                        (e,),
                        f"beacon claims creator {e.msg.creator}",
                    )
                )
            elif not num.eq(e.msg.beacon_time, e.start):
                violations.append(
                    Violation(
                        "beacon-time-mismatch",
                        (e,),
                        "beacon time differs from transmission start",
                    )
                )
        elif isinstance(e, Neighbor):
            justified = False
            for r in receives_by_actor.get(e.actor, ()):
                if (
                    isinstance(r.msg, BeaconT)
                    and r.msg.creator == e.peer
                    and r.sender in setting.loc
                    and num.eq(r.start, e.peer_time)
                    and pt_accepts(params, r.start, r.msg)
                    and e.start > event_end(r)
                ):
                    justified = True
                    break
            if not justified:
                violations.append(
                    Violation(
                        "neighbor-unjustified",
                        (e,),
                        f"no fresh completed beacon from {e.peer} backs this declaration",
                    )
                )
    return Verdict(tuple(violations))


def check_pgt_feasible(
    trace: Trace,
    setting: Setting,
    params: SystemParams,
    inacc: Optional[InaccuracyParams] = None,
    num: Num = EXACT,
) -> Verdict:
    """Direct conformance to the time- and location-stamped beacon protocol.

    Without measurement slack, correct nodes must stamp beacons with
    their exact transmission time and true location, and declarations
    require exact agreement of the two distance estimates.  With slack
    (delta, tau), beacon stamps may be off by up to delta in time and
    tau times the signal speed in location, and the estimates must agree
    within delta + tau.
    """
    violations: list[Violation] = []
    correct = set(setting.correct_nodes)
    receives_by_actor: dict[NodeId, list[Receive]] = {}
    for r in trace.of_kind(Receive):
        receives_by_actor.setdefault(r.actor, []).append(r)

    for e in trace:
        if e.actor not in correct:
            continue
        if isinstance(e, Bcast):
            if not isinstance(e.msg, BeaconTL):
                violations.append(
                    Violation(
                        "bcast-not-a-beacon", (e,), "correct nodes broadcast beacons only"
                    )
                )
                continue
            if e.msg.creator != e.actor:
                violations.append(
                    Violation(
                        "beacon-foreign-creator",
                        (e,),
                        f"beacon claims creator {e.msg.creator}",
                    )
                )
                continue
            true_loc = setting.loc[e.actor]
            if inacc is None:
                if not num.eq(e.msg.beacon_time, e.start):
                    violations.append(
                        Violation(
                            "beacon-time-mismatch",
                            (e,),
                            "beacon time differs from transmission start",
                        )
                    )
                elif e.msg.beacon_loc != true_loc:
                    violations.append(
                        Violation(
                            "beacon-location-mismatch",
                            (e,),
                            "beacon location differs from the node's location",
                        )
                    )
            else:
                time_ok = abs(e.msg.beacon_time - e.start) <= inacc.delta
                loc_bound = inacc.tau * params.v
                loc_ok = sq_dist(e.msg.beacon_loc, true_loc) <= loc_bound * loc_bound
                if not time_ok:
                    violations.append(
                        Violation(
                            "beacon-time-mismatch",
                            (e,),
                            "beacon time off by more than the time error bound",
                        )
                    )
                elif not loc_ok:
                    violations.append(
                        Violation(
                            "beacon-location-mismatch",
                            (e,),
                            "beacon location off by more than the location error bound",
                        )
                    )
        elif isinstance(e, Neighbor):
            owner_loc = setting.loc[e.actor]
            justified = False
            for r in receives_by_actor.get(e.actor, ()):
                if not (
                    isinstance(r.msg, BeaconTL)
                    and r.msg.creator == e.peer
                    and r.sender in setting.loc
                    and num.eq(r.start, e.peer_time)
                    and e.start > event_end(r)
                ):
                    continue
                if inacc is None:
                    accepted = pgt_accepts(params, owner_loc, r.start, r.msg, num)
                else:
                    accepted = pgt_approx_accepts(params, owner_loc, r.start, r.msg, inacc)
                if accepted:
                    justified = True
                    break
            if not justified:
                violations.append(
                    Violation(
                        "neighbor-unjustified",
                        (e,),
                        f"no distance-consistent beacon from {e.peer} backs this declaration",
                    )
                )
    return Verdict(tuple(violations))

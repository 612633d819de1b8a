#!/usr/bin/env python3
"""How measurement error erodes the time+location protocol.

With perfect clocks and localization, requiring the time-derived and
location-derived distance estimates to agree exactly stops every relay:
forwarding adds strictly positive delay that the pinned location claim
cannot absorb.  Real hardware needs an acceptance window of delta + tau
(clock error plus speed-scaled location error), and honest beacons may
themselves be stamped off by up to those bounds.  An adversary can bank
both allowances: skew tolerated in the stamps plus the acceptance
window add up, so relays with processing delay up to 2*(delta + tau)
slip through.  This demo sweeps the relay delay across that line.
"""

from fractions import Fraction as F

from ndcheck import (
    InaccuracyParams,
    PGT,
    PGT_APPROX,
    PlacementInfeasible,
    SINGLE_RELAY,
    SystemParams,
    availability_witness,
    check_pgt_feasible,
    check_setting_feasible,
    compute_boundaries,
    plan_relay_attack,
)

inacc = InaccuracyParams(delta=F(3, 1000), tau=F(1, 1000))
threshold = 2 * inacc.window
print(f"clock error bound delta = {inacc.delta}, location error bound tau = {inacc.tau}")
print(f"acceptance window  : delta + tau   = {inacc.window}")
print(f"vulnerability line : 2*(delta+tau) = {threshold}")
print()

print("= Exact protocol first: no window, no attack =")
for delta_relay in (F(1, 1_000_000), F(1, 1000)):
    params = SystemParams(F(1), F(1), F(10), delta_relay, F(1))
    try:
        plan_relay_attack(F(8), params, PGT, SINGLE_RELAY)
        print(f"  relay delay {delta_relay}: attack built (unexpected)")
    except PlacementInfeasible as exc:
        print(f"  relay delay {delta_relay}: infeasible ({exc})")
print()

print("= Slack-tolerant protocol: sweeping the relay delay =")
step = threshold / 8
for k in range(0, 13):
    delta_relay = step * k
    params = SystemParams(F(1), F(1), F(10), delta_relay, F(1))
    try:
        plan = plan_relay_attack(F(8), params, PGT_APPROX, SINGLE_RELAY, inacc=inacc)
        outcome = "ATTACK BUILT"
    except PlacementInfeasible:
        outcome = "infeasible"
    marker = "  <- 2*(delta+tau)" if delta_relay == threshold else ""
    print(f"  relay delay {str(delta_relay):>7}: {outcome}{marker}")
print()

print("= Availability stays intact under the window =")
params = SystemParams(F(1), F(1), F(10), F(1), F(1))
setting, trace = availability_witness(PGT_APPROX, F(8), params, inacc)
ok = (check_setting_feasible(trace, setting, params).ok
      and check_pgt_feasible(trace, setting, params, inacc).ok)
print(f"  honest discovery at distance 8 with the window in force: "
      f"{'works' if ok else 'broken'}")
report = compute_boundaries(params, inacc)
print(f"  vulnerable at relay delay {params.delta_relay}? "
      f"{'yes' if report.pgt_vulnerable else 'no'} "
      f"(threshold {threshold})")
print()
print("Better clocks and localization shrink delta and tau, and with them the")
print("window an adversary can hide a relay inside.")

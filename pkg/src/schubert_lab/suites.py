"""Verification suites and the main-theorem certificate.

Each suite is split into independent units (usually one per coweight) so
that they can be sharded and fanned out to worker processes.  A unit
returns the number of instances it checked, the failures it found, and
optional extra data; failures never raise.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Optional

from . import coweights as cw
from .alcoves import (
    Alcove,
    alcove_from_spine,
    alcove_to_wext,
    alcoves_in_box,
    base_alcove,
    enumerate_permissible,
    is_permissible,
    relative_position,
    rotate,
    rotate_power,
    wext_act,
)
from .coweights import Coweight
from .global_gr import build_convolution_witness, in_X, special_family_from_alcove
from .lattices import coweight_lattice, in_schubert_closure, in_schubert_orbit, scalar_lattice
from .minuscule import cached_verify_degeneration
from .orders import b_step, default_refinement, delta_sequence, descend, order_sequence, refines, table1_leq

SUITES = ("dominance", "alcove", "order", "lattice", "minuscule", "convolution", "main")

Failure = dict[str, Any]
UnitResult = tuple[int, list[Failure], dict[str, Any]]


def _fail(inp: Any, check: str, detail: str = "") -> Failure:
    return {"input": inp, "check": check, "detail": detail}


@dataclass
class VerificationReport:
    suite: str
    n: int
    params: dict[str, Any]
    instances: int = 0
    failures: list[Failure] = field(default_factory=list)
    extras: dict[str, Any] = field(default_factory=dict)
    wall_time: Optional[float] = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict[str, Any]:
        out = {
            "suite": self.suite,
            "n": self.n,
            "params": self.params,
            "instances": self.instances,
            "failures": self.failures,
            "extras": self.extras,
            "passed": self.passed,
        }
        if self.wall_time is not None:
            out["wall_time"] = self.wall_time
        return out


# -- individual checks, shared with the tests ------------------------------

def dom_subtract_failures(mu: Coweight) -> tuple[int, list[Failure]]:
    """``dom(lam' - varpi_t) <= mu`` for all t and all ``lam' <= mu + varpi_t``."""
    n = len(mu)
    count, out = 0, []
    for t in range(1, n):
        lam = cw.add(mu, cw.fundamental(t, n))
        for lp in sorted(cw.dominated_set(lam)):
            count += 1
            if not cw.leq_dominance(cw.dom(cw.sub(lp, cw.fundamental(t, n))), mu):
                out.append(_fail({"mu": list(mu), "t": t, "lambda_prime": list(lp)}, "dom_subtract"))
    return count, out


def rotation_failures(x: Alcove) -> list[str]:
    """Rotation laws and the order-comparison proposition for one alcove."""
    n = x.n
    c = cw.long_cycle(n)
    c_inv = cw.inverse(c)
    rx = rotate(x)
    out = []
    if rotate_power(x, n) != x:
        out.append("rot^n(x) != x")
    if rx.spine != cw.compose(c_inv, cw.compose(x.spine, c)):
        out.append("P(rot x) != c^-1 P(x) c")
    p1 = x.spine[0]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            here = table1_leq(x, i, j)
            there = table1_leq(rx, c_inv[i - 1], c_inv[j - 1])
            if i != p1 and j != p1 and here != there:
                out.append(f"order comparison fails for ({i},{j})")
            if i == p1 and here and not there:
                out.append(f"order comparison fails for (P(x)(1)={i},{j})")
    return out


def partial_order_failures(x: Alcove) -> list[str]:
    """``<|_x`` is a partial order whose incomparable pairs lie in common Fix sets."""
    n = x.n
    idx = range(1, n + 1)
    leq = {(i, j): table1_leq(x, i, j) for i in idx for j in idx}
    out = []
    for i in idx:
        if not leq[i, i]:
            out.append(f"not reflexive at {i}")
        for j in idx:
            if i != j and leq[i, j] and leq[j, i]:
                out.append(f"not antisymmetric at ({i},{j})")
            if i != j and not leq[i, j] and not leq[j, i]:
                same_fix = x.spine[i - 1] == i and x.spine[j - 1] == j and x.term(1)[i - 1] == x.term(1)[j - 1]
                if not same_fix:
                    out.append(f"({i},{j}) incomparable outside a Fix set")
            for k in idx:
                if leq[i, j] and leq[j, k] and not leq[i, k]:
                    out.append(f"not transitive at ({i},{j},{k})")
    return out


def descent_failures(x: Alcove, lam: Coweight, t: int) -> list[str]:
    """The descent contract and the ``b(t,k)`` identities for one triple."""
    n = x.n
    out = []
    mu = cw.sub(lam, cw.fundamental(t, n))
    try:
        y = descend(x, lam, t)
    except Exception as exc:  # descend re-checks its postconditions
        return [f"descend raised {type(exc).__name__}: {exc}"]
    if not is_permissible(y, mu):
        out.append("y not mu-permissible")
    if relative_position(x, y) != cw.fundamental(t, n):
        out.append("relative position is not varpi_t")
    for k in range(1, n + 1):
        try:
            b = b_step(x, t, k)
        except Exception as exc:
            out.append(f"b_step({t},{k}) raised {type(exc).__name__}: {exc}")
            continue
        if y.term(k + 1) != cw.add(y.term(k), cw.unit(b, n)):
            out.append(f"y^({k + 1}) != y^({k}) + e_b({t},{k})")
    return out


def random_alcove(rng: random.Random, n: int, lo: int = -2, hi: int = 2) -> Alcove:
    first = tuple(rng.randint(lo, hi) for _ in range(n))
    spine = list(range(1, n + 1))
    rng.shuffle(spine)
    return alcove_from_spine(first, tuple(spine))


def descent_steps(lam: Coweight) -> list[int]:
    """Indices ``k_1, k_2, ...``: always the least k with ``lam_k > lam_{k+1}``."""
    steps = []
    while lam[0] != lam[-1]:
        k = next(i for i in range(1, len(lam)) if lam[i - 1] > lam[i])
        steps.append(k)
        lam = cw.sub(lam, cw.fundamental(k, len(lam)))
    return steps


# -- main theorem chain ----------------------------------------------------

def certify_alcove(x: Alcove, lam: Coweight, seed: int = 0) -> dict[str, Any]:
    """Descend x to a constant coweight, certifying every step."""
    n = x.n
    steps = []
    ok = True
    cur, cur_lam = x, tuple(lam)
    while cur_lam[0] != cur_lam[-1]:
        k = next(i for i in range(1, n) if cur_lam[i - 1] > cur_lam[i])
        mu = cw.sub(cur_lam, cw.fundamental(k, n))
        wit = build_convolution_witness(cur, cur_lam, k, strict=False)
        deg = cached_verify_degeneration(wit.z, k, seed)
        step_ok = wit.passed and deg.passed and (mu[0] - mu[-1] < cur_lam[0] - cur_lam[-1])
        steps.append({
            "lambda": list(cur_lam),
            "k": k,
            "x": cur.to_json(),
            "y": wit.y.to_json(),
            "z": wit.z.to_json(),
            "witness": wit.checks,
            "degeneration_N": deg.N,
            "degeneration_passed": deg.passed,
            "passed": step_ok,
        })
        ok = ok and step_ok
        cur, cur_lam = wit.y, mu
    a = cur_lam[0]
    fam = special_family_from_alcove(cur)
    terminal = {
        "lambda": list(cur_lam),
        "alcove": cur.to_json(),
        "is_shifted_base": cur.terms == tuple(cw.add(t, (a,) * n) for t in base_alcove(n).terms),
        "members_scalar": all(m == scalar_lattice(a, n) for m in fam.members),
        "in_X": in_X(fam, cur_lam),
    }
    terminal["passed"] = terminal["is_shifted_base"] and terminal["members_scalar"] and terminal["in_X"]
    ok = ok and terminal["passed"]
    return {
        "x": x.to_json(),
        "in_X": in_X(special_family_from_alcove(x), lam),
        "steps": steps,
        "terminal": terminal,
        "passed": ok,
    }


def main_theorem_chain(lam: Coweight, seed: int = 0, shard: tuple[int, int] = (0, 1)) -> dict[str, Any]:
    """Certificate that ``L^x`` lies in the closure for every ``lam``-permissible x."""
    lam = cw.coweight(lam)
    cw.require_dominant(lam)
    certs = [certify_alcove(x, lam, seed) for x in enumerate_permissible(lam, shard)]
    return {
        "n": len(lam),
        "lambda": list(lam),
        "constant_part": lam[-1],
        "decomposition": descent_steps(lam),
        "seed": seed,
        "alcoves": certs,
        "count": len(certs),
        "passed": all(c["passed"] and c["in_X"] for c in certs),
    }


# -- suite units -----------------------------------------------------------

def _grid(n: int, max_entry: int) -> list[Coweight]:
    return cw.dominant_in_box(n, 0, max_entry)


def _unit_dominance(mu: Coweight) -> UnitResult:
    count, failures = dom_subtract_failures(mu)
    return count, failures, {}


def _unit_alcove(lam: Coweight) -> UnitResult:
    count, failures = 0, []
    for x in alcoves_in_box(len(lam), lam[-1] - 1, lam[0] + 1):
        count += 1
        inp = {"x": x.to_json(), "lambda": list(lam)}
        perm = is_permissible(x, lam)
        if in_X(special_family_from_alcove(x), lam) != perm:
            failures.append(_fail(inp, "in_X_equals_permissible"))
        if wext_act(alcove_to_wext(x), base_alcove(x.n)) != x:
            failures.append(_fail(inp, "wext_round_trip"))
        if perm and not is_permissible(rotate(x), lam):
            failures.append(_fail(inp, "rotation_keeps_permissible"))
        failures.extend(_fail(inp, "rotation", d) for d in rotation_failures(x))
    return count, failures, {}


def _unit_order(lam: Coweight) -> UnitResult:
    n = len(lam)
    count, failures = 0, []
    for x in enumerate_permissible(lam):
        inp = {"x": x.to_json(), "lambda": list(lam)}
        count += 1
        failures.extend(_fail(inp, "partial_order", d) for d in partial_order_failures(x))
        try:
            if not refines(x, default_refinement(x)):
                failures.append(_fail(inp, "refinement"))
            order_sequence(x)
            delta_sequence(x)
        except Exception as exc:
            failures.append(_fail(inp, "order_sequence", f"{type(exc).__name__}: {exc}"))
            continue
        for t in range(1, n):
            if lam[t - 1] > lam[t]:
                failures.extend(
                    _fail({**inp, "t": t}, "descent", d) for d in descent_failures(x, lam, t)
                )
    return count, failures, {}


def _unit_lattice(args: tuple[Coweight, int]) -> UnitResult:
    mu, max_entry = args
    n = len(mu)
    lat = coweight_lattice(mu)
    count, failures = 0, []
    for lam in cw.dominant_in_box(n, -1, max_entry):
        count += 1
        inp = {"mu": list(mu), "lambda": list(lam)}
        if in_schubert_closure(lat, lam) != cw.leq_dominance(cw.dom(mu), lam):
            failures.append(_fail(inp, "closure_oracle"))
        if in_schubert_orbit(lat, lam) != (cw.dom(mu) == lam):
            failures.append(_fail(inp, "orbit_oracle"))
    return count, failures, {}


def _unit_minuscule(args: tuple[Alcove, int, int]) -> UnitResult:
    x, t, seed = args
    rep = cached_verify_degeneration(x, t, seed)
    inp = {"x": x.to_json(), "t": t}
    failures = [_fail(inp, name) for name, ok in rep.checks.items() if not ok]
    failures.extend(_fail(inp, "sample", s["z"]) for s in rep.samples if not s["passed"])
    if not rep.passed and not failures:
        failures.append(_fail(inp, "report", "; ".join(rep.notes)))
    return 1, failures, {"N": [{"x": x.to_json(), "t": t, "N": rep.N}]}


def _unit_convolution(lam: Coweight) -> UnitResult:
    n = len(lam)
    count, failures = 0, []
    for k in range(1, n):
        if lam[k - 1] <= lam[k]:
            continue
        for x in enumerate_permissible(lam):
            count += 1
            inp = {"x": x.to_json(), "lambda": list(lam), "k": k}
            try:
                wit = build_convolution_witness(x, lam, k, strict=False)
            except Exception as exc:
                failures.append(_fail(inp, "witness", f"{type(exc).__name__}: {exc}"))
                continue
            failures.extend(_fail(inp, name) for name, ok in wit.checks.items() if not ok)
    return count, failures, {}


def _unit_main(args: tuple[Coweight, int]) -> UnitResult:
    lam, seed = args
    cert = main_theorem_chain(lam, seed)
    failures = [
        _fail({"x": c["x"], "lambda": list(lam)}, "certificate")
        for c in cert["alcoves"]
        if not (c["passed"] and c["in_X"])
    ]
    return cert["count"], failures, {"chains": [{"lambda": list(lam), "decomposition": cert["decomposition"], "count": cert["count"]}]}


def suite_units(suite: str, n: int, max_entry: int, seed: int) -> tuple[Callable[[Any], UnitResult], list[Any]]:
    if suite == "dominance":
        return _unit_dominance, _grid(n, max_entry)
    if suite == "alcove":
        return _unit_alcove, _grid(n, max_entry)
    if suite == "order":
        return _unit_order, _grid(n, max_entry)
    if suite == "lattice":
        return _unit_lattice, [(mu, max_entry) for mu in product(range(-1, max_entry + 1), repeat=n)]
    if suite == "minuscule":
        units = [
            (x, t, seed) for t in range(1, n) for x in enumerate_permissible(cw.fundamental(t, n))
        ]
        return _unit_minuscule, units
    if suite == "convolution":
        return _unit_convolution, _grid(n, max_entry)
    if suite == "main":
        return _unit_main, [(lam, seed) for lam in _grid(n, max_entry)]
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def worker_count() -> int:
    raw = os.environ.get("SCHUBERT_LAB_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_suite(
    suite: str,
    n: int,
    max_entry: int = 2,
    seed: int = 0,
    shard: tuple[int, int] = (0, 1),
    workers: Optional[int] = None,
    timing: bool = False,
) -> VerificationReport:
    start = time.perf_counter()
    fn, units = suite_units(suite, n, max_entry, seed)
    k, m = shard
    units = [u for idx, u in enumerate(units) if idx % m == k]
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, units))
    else:
        results = [fn(u) for u in units]
    report = VerificationReport(
        suite, n, {"max_entry": max_entry, "seed": seed, "shard": f"{k}/{m}"}
    )
    for count, failures, extras in results:
        report.instances += count
        report.failures.extend(failures)
        for key, val in extras.items():
            report.extras.setdefault(key, []).extend(val)
    if timing:
        report.wall_time = round(time.perf_counter() - start, 3)
    return report

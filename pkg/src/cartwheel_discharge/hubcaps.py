"""Hubcap dispositions: coverage checking, the degree arithmetic, and
the recursive bound certifier.

A hubcap is a list of triples (x, y, v): spoke pair plus a claimed
upper bound v on the total charge the rules can move between the hub
and that pair.  Certifying each bound is the job of check_bound; the
final inequality 10(6-d) + floor(sum(v)/2) <= 0 closes the case.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _kernels
from .axles import Axle
from .errors import InputError, InternalInvariantError, VerificationFailure


def validate_hubcap(triples, d):
    """Infer per-triple multiplicities and check the coverage rule.

    Each spoke index 1..d must be covered exactly twice by the x,y
    multiset.  A triple listed once may stand for two copies; it is
    promoted when one of its indices is otherwise covered only once.
    Returns the multiplicity list.
    """
    if not triples:
        raise InputError("empty hubcap")
    for x, y, v in triples:
        if not (1 <= x <= d and 1 <= y <= d):
            raise InputError(f"hubcap spoke ({x},{y}) out of 1..{d}")
    mult = [1] * len(triples)
    count = [0] * (d + 1)
    for x, y, _ in triples:
        count[x] += 1
        count[y] += 1
    for t, (x, y, _) in enumerate(triples):
        if count[x] == 1 or count[y] == 1:
            mult[t] = 2
    count = [0] * (d + 1)
    for t, (x, y, _) in enumerate(triples):
        count[x] += mult[t]
        count[y] += mult[t]
    bad = [i for i in range(1, d + 1) if count[i] != 2]
    if bad:
        raise InputError(
            f"hubcap does not cover spokes {bad} exactly twice "
            f"(multiplicities {mult})")
    return mult


def check_h2(triples, mult, d) -> bool:
    total = sum(v * m for (_, _, v), m in zip(triples, mult))
    return 10 * (6 - d) + total // 2 <= 0


@dataclass
class BoundContext:
    """One bound certification task: the fixed positioned-outlet list
    for a spoke pair, plus the reducibility escalation hook."""

    positioned: tuple          # ((Outlet, spoke), ...) canonical order
    reducer: object            # callable Axle -> bool
    trace: list = None
    values: tuple = field(init=False)

    def __post_init__(self):
        self.values = tuple(o.value for o, _ in self.positioned)


def build_bound_context(table, x, y, reducer, trace=None):
    # outlet-table order major; x before y; one copy when x == y
    spots = (x,) if x == y else (x, y)
    positioned = tuple((row.outlet, z) for row in table for z in spots)
    return BoundContext(positioned, reducer, trace)


def check_bound(ctx: BoundContext, p: int, s: list, v: int, a: Axle,
                trail=()):
    """Certify that no admissible outlet set beats v, or escalate to
    reducibility.  Raises VerificationFailure when neither works.

    s is the caller's sign vector: +1 enforced, -1 not permitted,
    0 undecided; entries before p are settled.
    """
    n = len(ctx.positioned)
    d = a.d
    lo, hi = a.lo, a.hi
    # every undecided outlet, not just those from p on: a wedge for a
    # later outlet can force an earlier negative one
    for i in range(n):
        if s[i] == 0:
            out, x = ctx.positioned[i]
            if _kernels.outlet_enforced(lo, hi, out.packed, x - 1, d):
                s[i] = 1
            elif not _kernels.outlet_permitted(lo, hi, out.packed, x - 1, d):
                s[i] = -1
    f = 0
    acc = 0
    for i in range(n):
        if s[i] == 1:
            f += ctx.values[i]
        elif s[i] == 0 and ctx.values[i] > 0:
            acc += ctx.values[i]
    if ctx.trace is not None:
        ctx.trace.append(
            f"bound p={p} s={''.join(str(t + 1) for t in s)} f={f} a={acc} "
            f"v={v} axle={a.digest()}")
    if acc + f <= v:
        return
    if f > v:
        if ctx.reducer(a):
            if ctx.trace is not None:
                ctx.trace.append(f"bound overflow f={f}>{v}: reducible "
                                 f"axle={a.digest()}")
            return
        raise VerificationFailure(
            f"forced value {f} exceeds bound {v} and the axle is not "
            f"reducible (branch {list(trail)}, axle {a!r})")
    for q in range(p, n):
        if s[q] != 0 or ctx.values[q] <= 0:
            continue
        out, x = ctx.positioned[q]
        wedged = _kernels.outlet_wedge(lo, hi, out.packed, x - 1, d)
        if wedged is None:
            raise InternalInvariantError(
                "undecided outlet failed to wedge despite being permitted")
        child = Axle(d, wedged[0], wedged[1])
        pruned = False
        for i in range(p):
            if s[i] == -1:
                o2, x2 = ctx.positioned[i]
                if _kernels.outlet_enforced(child.lo, child.hi, o2.packed,
                                            x2 - 1, d):
                    pruned = True
                    break
        if not pruned:
            s_child = list(s)
            s_child[q] = 1
            check_bound(ctx, q, s_child, v, child, trail + (q,))
        elif ctx.trace is not None:
            ctx.trace.append(f"bound prune q={q}")
        s[q] = -1
        acc -= ctx.values[q]
        if acc + f <= v:
            return
    raise InternalInvariantError("check_bound exhausted its branches "
                                 "without settling the bound")


def check_hubcap(a: Axle, triples, table, reducer, trace=None, jobs=1):
    """Verify every triple's bound and the closing inequality."""
    d = a.d
    mult = validate_hubcap(triples, d)
    if not check_h2(triples, mult, d):
        total = sum(v * m for (_, _, v), m in zip(triples, mult))
        raise VerificationFailure(
            f"hubcap sum {total} fails 10(6-{d}) + floor(sum/2) <= 0")

    def one(t):
        x, y, v = triples[t]
        sink = [] if trace is not None else None
        ctx = build_bound_context(table, x, y, reducer, sink)
        check_bound(ctx, 0, [0] * len(ctx.positioned), v, a)
        return sink

    if jobs <= 1 or len(triples) == 1:
        results = [one(t) for t in range(len(triples))]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(one, t) for t in range(len(triples))]
        # surface the first failure in triple order, not finish order
        results = []
        first_error = None
        for fut in futures:
            try:
                results.append(fut.result())
            except (VerificationFailure, InternalInvariantError) as e:
                if first_error is None:
                    first_error = e
                results.append(None)
        if first_error is not None:
            raise first_error
    if trace is not None:
        for t, sink in enumerate(results):
            x, y, v = triples[t]
            trace.append(f"hubcap triple {x} {y} {v}")
            trace.extend(sink)

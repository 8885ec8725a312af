"""Reducibility disposition: build the skeleton drawing carried by an
axle's upper bounds, search it for a good configuration, and recurse
on tightened axles until every branch carries one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .axles import Axle, validate_axle
from .configurations import Configuration, restrict_drawing
from .errors import InputError, InternalInvariantError, ReducibilityFailure
from .rules import _cartwheel_rotation


@dataclass(frozen=True)
class Skeleton:
    d: int
    cfg: Configuration
    pins: dict


def skeleton_of(a: Axle) -> Skeleton:
    """Drawing determined by the axle's upper bounds: the hub, the
    spokes, the hats, and fan rows for every spoke pinned to at most
    8.  Vertex labels are the upper bounds (12 for an open spoke)."""
    d = a.d
    pins = {i: a.hi[i] for i in range(1, d + 1) if a.hi[i] <= 8}
    positions = [0] + list(range(1, 2 * d + 1))
    for i, k in pins.items():
        positions.extend(j * d + i for j in range(2, k - 3))
    gamma = {}
    rot = {}
    cyc = {}
    for p in sorted(positions):
        if p == 0:
            gamma[p] = d
        elif p <= d:
            gamma[p] = pins.get(p, 12)
        else:
            gamma[p] = a.hi[p]
        lst, cyclic = _cartwheel_rotation(p, pins, d)
        rot[p] = lst
        cyc[p] = cyclic
    cfg = Configuration(f"skeleton-{a.digest()}", gamma, rot, cyc)
    try:
        cfg.validate()
    except InputError as e:
        raise InternalInvariantError(f"skeleton is not a valid drawing: {e}")
    return Skeleton(d, cfg, pins)


def well_positioned(f, cfg, skel: Skeleton) -> bool:
    """A placed configuration may omit a spoke only if it also omits
    one of the two hats beside it."""
    image = {f[v] for v in cfg.ids}
    d = skel.d
    for i in range(1, d + 1):
        if i in image:
            continue
        hat_a = d + i
        hat_b = d + (i - 1 if i > 1 else d)
        if hat_a in image and hat_b in image:
            return False
    return True


def check_iso(f, cfg, skel: Skeleton) -> bool:
    """Independent acceptance check on a placement: injective, label
    exact, adjacency preserved both ways, and the triangles of the
    configuration map onto triangular faces of the induced subdrawing
    of the skeleton, all with the same handedness (the mirror image
    counts as appearing)."""
    ids = cfg.ids
    image = [f[v] for v in ids]
    if len(set(image)) != len(image):
        return False
    kadj = skel.cfg.adj
    kgam = skel.cfg.gamma
    for v in ids:
        fv = f[v]
        if fv not in kadj or cfg.gamma[v] != kgam[fv]:
            return False
    for v in ids:
        for u in ids:
            if u >= v:
                continue
            if (u in cfg.adj[v]) != (f[u] in kadj[f[v]]):
                return False
    rot, _ = restrict_drawing(skel.cfg.rot, skel.cfg.cyclic, set(image))
    pred = {}
    for x, lst in rot.items():
        for t, y in enumerate(lst):
            pred[(x, y)] = lst[t - 1]

    # a plane isomorphism keeps one handedness throughout; the mirror
    # image of a configuration appears with every triangle reversed
    def handed(reverse):
        for (p, q, r) in cfg.triangles:
            fp, fq, fr = f[p], f[q], f[r]
            if reverse:
                fq, fr = fr, fq
            if pred.get((fq, fp)) != fr:
                return False
            if pred.get((fr, fq)) != fp:
                return False
            if pred.get((fp, fr)) != fq:
                return False
        return True

    return handed(False) or handed(True)


def _positive_answers(question, skel: Skeleton):
    """All embeddings the probe sequence finds, in canonical order."""
    cfg = skel.cfg
    gam = cfg.gamma
    x0 = question[0][3]
    x1 = question[1][3]
    z0 = question[0][2]
    z1 = question[1][2]
    for p in cfg.ids:
        if x0 > 0 and gam[p] != x0:
            continue
        for r in sorted(cfg.adj[p]):
            if x1 > 0 and gam[r] != x1:
                continue
            f = {z0: p, z1: r}
            used = {p, r}
            ok = True
            for (u, v, z, xi) in question[2:]:
                w = cfg.third.get((f[u], f[v]))
                if w is None or w in used or (xi > 0 and gam[w] != xi):
                    ok = False
                    break
                f[z] = w
                used.add(w)
            if ok:
                yield f


def find_positive_answer(question, skel: Skeleton):
    return next(_positive_answers(question, skel), None)


def semi_reducible(a: Axle, db, skel: Skeleton = None):
    """First good configuration appearing well-positioned in the
    skeleton of `a`, with its placement, or None.  For hub degree at
    least 6 an appearance must survive the independent isomorphism
    check; a miss there means the machinery itself is broken."""
    if skel is None:
        skel = skeleton_of(a)
    for gc in db:
        for question in (gc.question, gc.reflection):
            for f in _positive_answers(question, skel):
                img = {v: f[v] for v in gc.config.ids}
                if not well_positioned(img, gc.config, skel):
                    continue
                if check_iso(img, gc.config, skel):
                    return gc, img
                if a.d >= 6:
                    raise InternalInvariantError(
                        f"well-positioned answer for {gc.name} fails the "
                        f"isomorphism check on axle {a.digest()}")
    return None


def reducible(a: Axle, db, trace=None) -> bool:
    """Every axle compatible with `a` must carry a good configuration.
    Work a stack of (axle, trail): a found placement at positions P
    spawns one child per p in P where the bounds still have slack,
    with the upper bound at p lowered by one.  An exhausted search
    raises ReducibilityFailure naming the stuck axle and its trail."""
    stack = [(a, ())]
    while stack:
        b, trail = stack.pop()
        found = semi_reducible(b, db)
        if found is None:
            if trace is not None:
                trace.append(
                    f"reduce fail axle={b.digest()} trail={_fmt_trail(trail)}")
            raise ReducibilityFailure(
                f"no good configuration appears in axle {b.digest()} "
                f"(trail {_fmt_trail(trail)})", b, trail)
        gc, img = found
        if trace is not None:
            trace.append(
                f"reduce axle={b.digest()} trail={_fmt_trail(trail)} "
                f"config={gc.name} image={sorted(set(img.values()))}")
        children = []
        for pos in sorted(set(img.values())):
            if b.lo[pos] < b.hi[pos]:
                hi = bytearray(b.hi)
                hi[pos] -= 1
                child = Axle(b.d, b.lo, bytes(hi))
                bad = validate_axle(child)
                if bad:
                    raise InternalInvariantError(
                        f"tightened axle breaks its invariants: {bad}")
                children.append((child, trail + ((pos, hi[pos]),)))
        stack.extend(reversed(children))
    return True


def _fmt_trail(trail):
    if not trail:
        return "-"
    return ",".join(f"{p}:{u}" for p, u in trail)

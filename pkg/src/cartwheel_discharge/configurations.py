"""Labeled plane near-triangulations, their free completions,
enhancements, and the probe sequences used to search skeletons.

A drawing is a rotation system: rot[v] lists the neighbors of v in
clockwise order.  cyclic[v] tells whether that list is the full cycle
(v is interior) or a linear run whose two ends flank the infinite
region.  gamma[v] is the labeled degree; ring vertices added by
completion carry None.

Faces are traced edge by edge: from a directed edge (u, v) the next
edge of the same face is (v, w) with w the clockwise predecessor of u
around v.  A corner is open when it touches the infinite region,
which shows up either as the wrap of a linear list or as a flanking
pair that is not itself an edge.  A valid drawing has exactly one
all-open face and every other face a closed triangle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InternalInvariantError


def _canon_triangle(a, b, c):
    if a <= b and a <= c:
        return (a, b, c)
    if b <= a and b <= c:
        return (b, c, a)
    return (c, a, b)


class Configuration:
    def __init__(self, name, gamma, rot, cyclic):
        self.name = name
        self.gamma = dict(gamma)
        self.rot = {v: list(ws) for v, ws in rot.items()}
        self.cyclic = dict(cyclic)
        self.ids = sorted(self.rot)

    def __repr__(self):
        return f"Configuration({self.name}, {len(self.ids)} vertices)"

    def _faces(self):
        rot, cyclic, adj = self.rot, self.cyclic, self.adj
        nxt = {}
        opens = {}
        for v, lst in rot.items():
            for t, u in enumerate(lst):
                w = lst[t - 1]
                nxt[(u, v)] = (v, w)
                opens[(u, v)] = (t == 0 and not cyclic[v]) or w not in adj[u]
        orbits = []
        seen = set()
        for e0 in sorted(nxt):
            if e0 in seen:
                continue
            orbit = [e0]
            seen.add(e0)
            e = nxt[e0]
            while e != e0:
                orbit.append(e)
                seen.add(e)
                e = nxt[e]
            orbits.append(orbit)
        return opens, orbits

    def _check_graph(self):
        name = self.name
        if not self.rot:
            raise InputError(f"{name}: no vertices")
        if set(self.gamma) != set(self.rot) or set(self.cyclic) != set(self.rot):
            raise InputError(f"{name}: vertex tables out of step")
        adj = {}
        for v, lst in self.rot.items():
            if v in lst:
                raise InputError(f"{name}: vertex {v} lists itself")
            if len(set(lst)) != len(lst):
                raise InputError(f"{name}: vertex {v} repeats a neighbor")
            adj[v] = frozenset(lst)
        for v, lst in self.rot.items():
            for u in lst:
                if u not in adj or v not in adj[u]:
                    raise InputError(f"{name}: edge {v}-{u} is one-sided")
        self.adj = adj
        seen = {self.ids[0]}
        frontier = [self.ids[0]]
        while frontier:
            v = frontier.pop()
            for u in self.rot[v]:
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
        if len(seen) != len(self.ids):
            raise InputError(f"{name}: drawing is not connected")

    def validate_light(self):
        """Adjacency and connectivity checks plus the corner map, with
        no demand that every region be a triangle.  Restrictions of
        valid drawings (where regions merge) go through here."""
        self._check_graph()
        self.opens_at = None
        self.outer = ()
        if len(self.ids) == 1:
            self.third = {}
            self.triangles = ()
            return self
        opens, orbits = self._faces()
        third = {}
        canon = []
        for orbit in orbits:
            if len(orbit) != 3 or any(opens[e] for e in orbit):
                continue
            for t in range(3):
                u, v = orbit[t]
                _, w = orbit[(t + 1) % 3]
                third[(u, v)] = w
            a, b = orbit[0]
            canon.append(_canon_triangle(a, b, third[(a, b)]))
        self.third = third
        self.triangles = tuple(sorted(canon))
        return self

    def validate(self, strict_gamma=True):
        """Check the drawing and cache adjacency, triangles, and the
        outer walk.  Raises InputError on any defect."""
        name = self.name
        self._check_graph()

        if len(self.ids) == 1:
            v = self.ids[0]
            self.third = {}
            self.triangles = ()
            self.outer = ()
            self.opens_at = {v: 1}
            return self

        opens, orbits = self._faces()
        outer = []
        tris = []
        for orbit in orbits:
            flags = [opens[e] for e in orbit]
            if all(flags):
                outer.append(orbit)
            elif not any(flags) and len(orbit) == 3:
                tris.append(orbit)
            else:
                raise InputError(
                    f"{name}: face through {orbit[0]} is neither a triangle "
                    f"nor the infinite region")
        if len(outer) != 1:
            raise InputError(
                f"{name}: expected one infinite region, found {len(outer)}")
        edges = sum(len(lst) for lst in self.rot.values()) // 2
        if len(self.ids) - edges + len(tris) + 1 != 2:
            raise InputError(f"{name}: face count breaks the plane formula")
        third = {}
        canon = []
        for orbit in tris:
            for t in range(3):
                u, v = orbit[t]
                _, w = orbit[(t + 1) % 3]
                third[(u, v)] = w
            a, b = orbit[0]
            canon.append(_canon_triangle(a, b, third[(a, b)]))
        self.third = third
        self.triangles = tuple(sorted(canon))
        self.outer = tuple(outer[0])
        opens_at = {v: 0 for v in self.ids}
        for (u, v), flag in opens.items():
            if flag:
                opens_at[v] += 1
        self.opens_at = opens_at
        if strict_gamma:
            for v in self.ids:
                g = self.gamma[v]
                deg = len(self.rot[v])
                if g is None:
                    if opens_at[v] == 0:
                        raise InputError(
                            f"{name}: unlabeled vertex {v} is interior")
                    continue
                if g < deg:
                    raise InputError(
                        f"{name}: vertex {v} labeled {g} below its degree {deg}")
                if (g == deg) != (opens_at[v] == 0):
                    raise InputError(
                        f"{name}: vertex {v} labeled {g} does not match its "
                        f"boundary status")
        return self


def restrict_drawing(rot, cyclic, keep):
    """Induced subdrawing data: rotations filtered to `keep`, original
    list order (hence orientation) preserved."""
    new_rot = {v: [w for w in rot[v] if w in keep] for v in keep}
    new_cyc = {v: cyclic[v] for v in keep}
    return new_rot, new_cyc


def parse_configurations(text, path=None):
    configs = []
    name = None
    want = 0
    start = 0
    gamma = {}
    rot = {}
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "config":
            if name is not None:
                raise InputError(f"config {name!r} not closed with 'end'",
                                 lineno, path)
            if len(parts) != 3:
                raise InputError("expected 'config <name> <nVertices>'",
                                 lineno, path)
            try:
                want = int(parts[2])
            except ValueError:
                raise InputError("vertex count must be an integer", lineno, path)
            name = parts[1]
            start = lineno
            gamma = {}
            rot = {}
        elif parts[0] == "v":
            if name is None:
                raise InputError("vertex line outside a config record",
                                 lineno, path)
            if len(parts) < 4 or parts[3] != ":":
                raise InputError("expected 'v <id> <gamma> : <neighbors>'",
                                 lineno, path)
            try:
                vid = int(parts[1])
                g = int(parts[2])
                neigh = [int(x) for x in parts[4:]]
            except ValueError:
                raise InputError("non-integer field in vertex line",
                                 lineno, path)
            if vid in rot:
                raise InputError(f"vertex {vid} listed twice", lineno, path)
            if g > 11:
                raise InputError(
                    f"vertex {vid} labeled {g}; labels above 11 are rejected",
                    lineno, path)
            if g < 1:
                raise InputError(f"vertex {vid} labeled {g}", lineno, path)
            gamma[vid] = g
            rot[vid] = neigh
        elif parts[0] == "end":
            if name is None:
                raise InputError("'end' outside a config record", lineno, path)
            if len(rot) != want:
                raise InputError(
                    f"config {name} declares {want} vertices, lists {len(rot)}",
                    lineno, path)
            for vid, neigh in rot.items():
                for u in neigh:
                    if u not in rot:
                        raise InputError(
                            f"config {name}: vertex {vid} lists unknown "
                            f"neighbor {u}", lineno, path)
            cyclic = {v: gamma[v] == len(rot[v]) for v in rot}
            cfg = Configuration(name, gamma, rot, cyclic)
            try:
                cfg.validate()
            except InputError as e:
                raise InputError(e.message, start, path)
            configs.append(cfg)
            name = None
        else:
            raise InputError(f"unexpected {parts[0]!r}", lineno, path)
    if name is not None:
        raise InputError(f"config {name!r} not closed with 'end'", lineno, path)
    return configs


def centers(cfg: Configuration):
    """Vertices from which everything is within two steps."""
    out = []
    for v in cfg.ids:
        near = {v} | set(cfg.rot[v])
        for u in cfg.rot[v]:
            near |= cfg.adj[u]
        if len(near) == len(cfg.ids):
            out.append(v)
    return out


def radius_at_most_two(cfg: Configuration):
    cs = centers(cfg)
    return cs[0] if cs else None


def free_completion(cfg: Configuration):
    """Extend the drawing by a surrounding ring so every labeled
    vertex reaches its labeled degree.  Returns (completion, ring)."""
    ids = cfg.ids
    base = max(ids)
    if len(ids) == 1:
        v = ids[0]
        g = cfg.gamma[v]
        if g is None or g < 3:
            raise InputError(f"{cfg.name}: cannot ring a vertex labeled {g}")
        ring = [base + 1 + t for t in range(g)]
        rot = {v: list(ring)}
        gam = {v: g}
        cyc = {v: True}
        for t, q in enumerate(ring):
            rot[q] = [ring[(t + 1) % g], v, ring[(t - 1) % g]]
            gam[q] = None
            cyc[q] = False
        l0 = Configuration(cfg.name + "+ring", gam, rot, cyc)
        l0.validate()
        return l0, tuple(ring)

    # corners of the infinite region, in walk order from the smallest
    # directed edge of the outer face
    walk = list(cfg.outer)
    s = walk.index(min(walk))
    walk = walk[s:] + walk[:s]
    corners = []
    for t, (u, v) in enumerate(walk):
        _, w = walk[(t + 1) % len(walk)]
        corners.append((v, u, w))
    hits = {}
    for v, _, _ in corners:
        hits[v] = hits.get(v, 0) + 1
    ks = []
    for v, u, w in corners:
        g = cfg.gamma[v]
        deg = len(cfg.rot[v])
        if hits[v] == 1:
            k = g - deg
        elif hits[v] == 2:
            if g - deg != 2:
                raise InputError(
                    f"{cfg.name}: vertex {v} splits the boundary but is "
                    f"labeled {g} with degree {deg}")
            k = 1
        else:
            raise InputError(
                f"{cfg.name}: vertex {v} touches the infinite region "
                f"{hits[v]} times")
        if k < 1:
            raise InputError(f"{cfg.name}: vertex {v} has no room for a ring")
        ks.append(k)
    m = sum(k - 1 for k in ks)
    if m < 3:
        raise InputError(f"{cfg.name}: ring of {m} vertices is not a circuit")
    ring = [base + 1 + t for t in range(m)]
    # corner j receives k_j consecutive ring vertices; consecutive
    # corners share one
    offs = []
    o = 0
    for k in ks:
        offs.append(o)
        o += k - 1
    fans = [[ring[(offs[j] + t) % m] for t in range(ks[j])]
            for j in range(len(ks))]

    # the outer walk runs counter to the rotations, so a fan is spliced
    # into its corner in reverse walk order
    rot = {v: list(cfg.rot[v]) for v in ids}
    for j, (v, u, w) in enumerate(corners):
        lst = rot[v]
        t = lst.index(u)
        if t == 0:
            lst.extend(reversed(fans[j]))
        else:
            if lst[t - 1] != w:
                raise InternalInvariantError("corner flanks out of order")
            lst[t:t] = reversed(fans[j])

    runs = {}
    for j, fan in enumerate(fans):
        for t, q in enumerate(fan):
            runs.setdefault(q, []).append((j, t == 0, t == len(fan) - 1))
    nc = len(corners)
    for idx, q in enumerate(ring):
        entries = runs[q]
        if len(entries) == 1:
            owners = [corners[entries[0][0]][0]]
        else:
            starts = [j for j, first, last in entries if last and not first]
            members = {j for j, _, _ in entries}
            if len(starts) != 1:
                raise InternalInvariantError("ring corner run has no start")
            owners = []
            j = starts[0]
            while len(owners) < len(entries):
                if j not in members:
                    raise InternalInvariantError("ring corner run is broken")
                owners.append(corners[j][0])
                j = (j + 1) % nc
        rot[q] = [ring[(idx - 1) % m]] + owners + [ring[(idx + 1) % m]]

    gam = {v: cfg.gamma[v] for v in ids}
    cyc = {v: True for v in ids}
    for q in ring:
        gam[q] = None
        cyc[q] = False
    l0 = Configuration(cfg.name + "+ring", gam, rot, cyc)
    try:
        l0.validate()
    except InputError as e:
        raise InputError(
            f"{cfg.name}: completion is not a plane triangulation: {e.message}")
    for v in ids:
        if len(l0.rot[v]) != cfg.gamma[v]:
            raise InputError(
                f"{cfg.name}: vertex {v} completes to degree "
                f"{len(l0.rot[v])}, labeled {cfg.gamma[v]}")
    return l0, tuple(ring)


def _two_connected(adj, ids):
    if len(ids) <= 2:
        return True
    for v in ids:
        rest = [u for u in ids if u != v]
        seen = {rest[0]}
        stack = [rest[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y != v and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(rest):
            return False
    return True


def enhance(cfg: Configuration, l0: Configuration, ring):
    """The search drawing J: the configuration itself when 2-connected,
    else augmented by one ring vertex tying the branches together.
    Returns (J, extra) with extra the added vertex or None."""
    ids = cfg.ids
    if len(ids) == 1:
        v = ids[0]
        extra = ring[0]
        keep = {v, extra}
    elif _two_connected(cfg.adj, ids):
        return cfg, None
    else:
        cuts = []
        for v in ids:
            rest = [u for u in ids if u != v]
            seen = {rest[0]}
            stack = [rest[0]]
            while stack:
                x = stack.pop()
                for y in cfg.adj[x]:
                    if y != v and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != len(rest):
                cuts.append(v)
        if len(cuts) != 1:
            raise InputError(
                f"{cfg.name}: {len(cuts)} cut vertices, expected exactly one")
        v = cuts[0]
        comps = []
        left = set(ids) - {v}
        while left:
            x = min(left)
            comp = {x}
            stack = [x]
            while stack:
                y = stack.pop()
                for z in cfg.adj[y]:
                    if z != v and z not in comp:
                        comp.add(z)
                        stack.append(z)
            comps.append(comp)
            left -= comp
        ringset = set(ring)
        candidates = []
        for r in l0.rot[v]:
            if r not in ringset:
                continue
            touch = set(l0.adj[r]) - ringset
            if all(comp & touch for comp in comps):
                candidates.append(r)
        if not candidates:
            raise InputError(
                f"{cfg.name}: no ring vertex ties the branches together")
        extra = min(candidates)
        keep = set(ids) | {extra}
    rot, cyc = restrict_drawing(l0.rot, l0.cyclic, keep)
    gam = {v: l0.gamma[v] for v in keep}
    j = Configuration(cfg.name + "+J", gam, rot, cyc)
    try:
        j.validate_light()
    except InputError as e:
        raise InputError(f"{cfg.name}: enhancement is degenerate: {e.message}")
    if len(j.ids) >= 3 and not _two_connected(j.adj, j.ids):
        raise InputError(f"{cfg.name}: enhancement is not 2-connected")
    return j, extra


def make_question(cfg: Configuration, jcfg: Configuration, extra):
    """Probe sequence: two adjacent seeds, then repeatedly a clockwise
    corner of J over two placed vertices, until the whole labeled
    drawing is covered.  Each probe is (u, v, z, xi)."""
    gam = cfg.gamma
    cs = centers(cfg)
    if not cs:
        raise InputError(f"{cfg.name}: no vertex reaches everything in two steps")
    z0 = min(cs, key=lambda v: (-gam[v], v))
    if len(cfg.ids) == 1:
        if extra is None:
            raise InternalInvariantError("isolated vertex without a ring seed")
        z1, x1 = extra, 0
    else:
        z1 = min(cfg.adj[z0], key=lambda v: (-gam[v], v))
        x1 = gam[z1]
    queries = [(None, None, z0, gam[z0]), (None, None, z1, x1)]
    placed = [z0, z1]
    todo = set(cfg.ids) - {z0, z1}
    while todo:
        best = None
        for u in placed:
            for v in placed:
                z = jcfg.third.get((u, v))
                if z is None or z in placed:
                    continue
                xi = 0 if z == extra else gam[z]
                key = (z == extra, -xi, z, u, v)
                if best is None or key < best[0]:
                    best = (key, (u, v, z, xi))
        if best is None:
            raise InputError(
                f"{cfg.name}: probe sequence cannot reach {sorted(todo)}")
        queries.append(best[1])
        placed.append(best[1][2])
        todo.discard(best[1][2])
    return tuple(queries)


def reflect_question(question):
    return tuple(question[:2]) + tuple(
        (v, u, z, xi) for (u, v, z, xi) in question[2:])


def question_problems(question, cfg, jcfg, extra):
    """Static checks on a probe sequence; empty list when sound."""
    probs = []
    zs = [q[2] for q in question]
    if len(set(zs)) != len(zs):
        probs.append("repeated probe vertex")
    if not set(cfg.ids) <= set(zs):
        probs.append("probes do not cover the labeled drawing")
    if len(question) < 2:
        probs.append("fewer than two seed probes")
        return probs
    z0, z1 = question[0][2], question[1][2]
    if len(cfg.ids) == 1:
        if z1 != extra or question[1][3] != 0:
            probs.append("isolated drawing must seed on its ring neighbor")
    elif z1 not in cfg.adj.get(z0, frozenset()):
        probs.append("seed pair not adjacent")
    for t, (u, v, z, xi) in enumerate(question):
        want = 0 if z == extra else cfg.gamma.get(z)
        if xi != want:
            probs.append(f"probe {t} carries label {xi}, vertex has {want}")
        if t < 2:
            continue
        if u not in zs[:t] or v not in zs[:t]:
            probs.append(f"probe {t} leans on unplaced vertices")
        if jcfg.third.get((u, v)) != z:
            probs.append(f"probe {t} is not a clockwise corner")
    return probs


@dataclass(frozen=True)
class GoodConfiguration:
    config: Configuration
    completion: Configuration
    ring: tuple
    enhancement: Configuration
    extra: object
    question: tuple
    reflection: tuple

    @property
    def name(self):
        return self.config.name


def build_good_configuration(cfg: Configuration) -> GoodConfiguration:
    if radius_at_most_two(cfg) is None:
        raise InputError(f"{cfg.name}: radius exceeds two")
    l0, ring = free_completion(cfg)
    j, extra = enhance(cfg, l0, ring)
    q = make_question(cfg, j, extra)
    probs = question_problems(q, cfg, j, extra)
    if probs:
        raise InternalInvariantError(
            f"{cfg.name}: generated probes fail their checks: {probs}")
    return GoodConfiguration(cfg, l0, ring, j, extra, q, reflect_question(q))


def load_database(text, path=None):
    return [build_good_configuration(c) for c in parse_configurations(text, path)]

"""Exact calculus of basic compact open sets of a graph's path groupoid.

A ``PathPair`` (mu, nu) with a common source vertex stands for the set of
groupoid elements (mu x, |mu| - |nu|, nu x) where x runs over boundary
paths continuing from that vertex.  A ``BasicBisection`` removes from such a
set the elements whose continuation starts with one of finitely many
excluded paths.  All operations below are symbolic and exact; nothing
infinite is ever materialized.  ``GroupoidProbe`` truncations stand in for
actual groupoid elements in membership tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, Path, concat, is_prefix, strip_prefix, vertex_path


@dataclass(frozen=True)
class PathPair:
    """The basic set Z(mu, nu); requires source(mu) == source(nu)."""

    mu: Path
    nu: Path

    def __post_init__(self):
        if self.mu.graph is not self.nu.graph:
            raise ValueError("paths live on different graphs")
        if self.mu.source_vertex != self.nu.source_vertex:
            raise ValueError("pair %r needs a common source vertex" % (self,))

    @property
    def graph(self) -> Graph:
        return self.mu.graph

    @property
    def source_vertex(self):
        return self.mu.source_vertex

    @property
    def degree(self):
        return len(self.mu) - len(self.nu)

    @property
    def min_depth(self):
        return min(len(self.mu), len(self.nu))

    def is_source_terminated(self):
        return self.graph.is_source(self.source_vertex)

    def extend(self, tau: Path) -> "PathPair":
        return PathPair(concat(self.mu, tau), concat(self.nu, tau))

    def sort_key(self):
        return (len(self.mu), self.mu.sort_key(), self.nu.sort_key())

    def render(self):
        return "Z(%s,%s)" % (self.mu.render(), self.nu.render())

    def __repr__(self):
        return self.render()


@dataclass(frozen=True)
class BasicBisection:
    """Z((mu, nu) \\ F): the pair minus the branches continuing into F.

    The excluded paths all range at the pair's source vertex, have positive
    length, and form an antichain under the prefix order (a longer excluded
    path inside a shorter one is redundant and is dropped on construction).
    """

    pair: PathPair
    excluded: tuple

    def __init__(self, pair, excluded=()):
        excluded = list(excluded)
        for alpha in excluded:
            if alpha.graph is not pair.graph:
                raise ValueError("excluded path on a different graph")
            if len(alpha) < 1:
                raise ValueError("excluded paths must have positive length")
            if alpha.range_vertex != pair.source_vertex:
                raise ValueError(
                    "excluded path %r does not continue the pair" % (alpha,))
        reduced = []
        for alpha in sorted(excluded, key=Path.sort_key):
            if not any(is_prefix(b, alpha) for b in reduced):
                reduced.append(alpha)
        object.__setattr__(self, "pair", pair)
        object.__setattr__(self, "excluded", tuple(reduced))

    @property
    def graph(self) -> Graph:
        return self.pair.graph

    def sort_key(self):
        return self.pair.sort_key() + (tuple(a.sort_key() for a in self.excluded),)

    def render(self):
        if not self.excluded:
            return self.pair.render()
        inner = ",".join(a.render() for a in self.excluded)
        return "Z((%s,%s) \\ {%s})" % (self.pair.mu.render(), self.pair.nu.render(), inner)

    def __repr__(self):
        return self.render()


def as_bisection(p) -> BasicBisection:
    return p if isinstance(p, BasicBisection) else BasicBisection(p, ())


@dataclass(frozen=True)
class GroupoidProbe:
    """A truncated groupoid element (mu_full . x, degree, nu_full . x).

    Both truncations share their source vertex so they admit the same
    generic continuation x, and the degree is forced by the truncation
    lengths because the continuation cancels.
    """

    mu_full: Path
    nu_full: Path
    degree: int

    def __init__(self, mu_full, nu_full, degree=None):
        if mu_full.graph is not nu_full.graph:
            raise ValueError("probe paths live on different graphs")
        if mu_full.source_vertex != nu_full.source_vertex:
            raise ValueError("probe truncations need a common source vertex")
        forced = len(mu_full) - len(nu_full)
        if degree is None:
            degree = forced
        if degree != forced:
            raise ValueError("probe degree %d inconsistent with truncations" % degree)
        object.__setattr__(self, "mu_full", mu_full)
        object.__setattr__(self, "nu_full", nu_full)
        object.__setattr__(self, "degree", degree)

    def invert(self) -> "GroupoidProbe":
        return GroupoidProbe(self.nu_full, self.mu_full)

    def sort_key(self):
        return (self.mu_full.sort_key(), self.nu_full.sort_key())

    def render(self):
        return "(%s, %d, %s)" % (self.mu_full.render(), self.degree, self.nu_full.render())

    def __repr__(self):
        return self.render()


# -- pair-level case analysis ---------------------------------------------


def pair_extension(inner: PathPair, outer: PathPair):
    """The common tau with inner == outer.extend(tau), or None.

    When it exists, Z(inner) is contained in Z(outer).
    """
    t1 = strip_prefix(inner.mu, outer.mu)
    t2 = strip_prefix(inner.nu, outer.nu)
    if t1 is None or t2 is None or t1 != t2:
        return None
    return t1


def intersect_pairs(p: PathPair, q: PathPair):
    """Z(p) meet Z(q): the deeper pair when one extends the other, else None."""
    if pair_extension(q, p) is not None:
        return q
    if pair_extension(p, q) is not None:
        return p
    return None


def subtract_pairs(p: PathPair, q: PathPair):
    """Z(p) minus Z(q) as a BasicBisection, or None when the result is empty.

    Three cases: q extends p by tau (record tau as an exclusion; empty tau
    removes everything), p extends q (p is swallowed), or the sets are
    disjoint (p unchanged).
    """
    tau = pair_extension(q, p)
    if tau is not None:
        if len(tau) == 0:
            return None
        return BasicBisection(p, (tau,))
    if pair_extension(p, q) is not None:
        return None
    return BasicBisection(p, ())


def compose_pairs(p: PathPair, q: PathPair):
    """The set product Z(p) . Z(q), a single pair or None when empty.

    Elements compose exactly when the source path of p and the range path
    of q agree after extension by a common remainder tau, which slides tau
    onto the outer paths; the degree of the result is the sum of degrees.
    """
    tau = strip_prefix(q.mu, p.nu)
    if tau is not None:
        return PathPair(concat(p.mu, tau), q.nu)
    tau = strip_prefix(p.nu, q.mu)
    if tau is not None:
        return PathPair(p.mu, concat(q.nu, tau))
    return None


def invert_pair(p: PathPair) -> PathPair:
    return PathPair(p.nu, p.mu)


def invert(b):
    """Pointwise inversion; swaps the pair and keeps the exclusions."""
    if isinstance(b, PathPair):
        return invert_pair(b)
    return BasicBisection(invert_pair(b.pair), b.excluded)


def expand(p: PathPair, target_depth: int):
    """Split Z(p) into the disjoint union over one-edge continuations until
    every piece has min depth target_depth or is source terminated.

    One expansion step replaces a pair by its extensions along every edge
    ranging at the source vertex; at a source vertex the pair is already a
    single truncated element and stays as it is.
    """
    if target_depth < p.min_depth:
        raise ValueError("target depth %d below pair depth %d" % (target_depth, p.min_depth))
    done = []
    todo = [p]
    while todo:
        cur = todo.pop()
        if cur.min_depth >= target_depth or cur.is_source_terminated():
            done.append(cur)
            continue
        for e in cur.graph.edges_with_range(cur.source_vertex):
            todo.append(cur.extend(Path(cur.graph, (e.id,))))
    done.sort(key=PathPair.sort_key)
    return done


# -- emptiness ------------------------------------------------------------


def is_empty(b) -> bool:
    """Decide whether Z((mu,nu) \\ F) contains no element.

    The set is nonempty iff some boundary continuation avoids every path in
    F as a prefix.  Search the continuation tree from the source vertex to
    depth max |alpha| pruning excluded branches; a surviving node at full
    depth extends to a boundary path, and a surviving node at a source
    vertex already is one.
    """
    b = as_bisection(b)
    if not b.excluded:
        return False
    g = b.graph
    horizon = max(len(a) for a in b.excluded)
    # Each stack entry: (vertex, remaining suffixes of excluded paths, depth).
    stack = [(b.pair.source_vertex, [a.edges for a in b.excluded], 0)]
    while stack:
        v, active, depth = stack.pop()
        if depth == horizon or g.is_source(v):
            return False
        for e in g.edges_with_range(v):
            nxt = [suf[1:] for suf in active if suf[0] == e.id]
            if any(len(suf) == 0 for suf in nxt):
                continue  # this branch is excluded outright
            if not nxt:
                return False  # no exclusion can reach this branch any more
            stack.append((e.source_vertex, nxt, depth + 1))
    return True


# -- membership -----------------------------------------------------------


def pair_contains(p: PathPair, probe: GroupoidProbe) -> bool:
    tail_mu = strip_prefix(probe.mu_full, p.mu)
    if tail_mu is None:
        return False
    tail_nu = strip_prefix(probe.nu_full, p.nu)
    return tail_nu is not None and tail_mu == tail_nu


def member(b, probe: GroupoidProbe) -> bool:
    """Probe membership: the pair matches with a shared tail, the degree
    agrees, and no excluded path is a prefix of the tail."""
    b = as_bisection(b)
    if probe.degree != b.pair.degree:
        return False
    tail = strip_prefix(probe.mu_full, b.pair.mu)
    if tail is None:
        return False
    other = strip_prefix(probe.nu_full, b.pair.nu)
    if other is None or tail != other:
        return False
    return not any(is_prefix(a, tail) for a in b.excluded)


def enumerate_probes(g: Graph, max_len: int):
    """All probes with truncations of length <= max_len, canonically ordered."""
    from .graph import enumerate_paths

    by_source = {}
    for p in enumerate_paths(g, max_len=max_len):
        by_source.setdefault(p.source_vertex, []).append(p)
    probes = []
    for v in g.vertices:
        group = by_source.get(v, [])
        for a in group:
            for b in group:
                probes.append(GroupoidProbe(a, b))
    return probes


def boundary_tails(g: Graph, v, depth: int):
    """Continuation truncations from v: length == depth, or source terminated."""
    from .graph import enumerate_paths

    out = []
    for w in enumerate_paths(g, from_range=v, max_len=depth):
        if len(w) == depth or g.is_source(w.source_vertex):
            out.append(w)
    return out


def probes_in(b, depth: int):
    """The probes of Z((mu,nu) \\ F) whose shared tail has the given depth."""
    b = as_bisection(b)
    out = []
    for w in boundary_tails(b.graph, b.pair.source_vertex, depth):
        probe = GroupoidProbe(concat(b.pair.mu, w), concat(b.pair.nu, w))
        if member(b, probe):
            out.append(probe)
    return out


# -- bisection-level boolean operations ------------------------------------


def intersect_bisections(b1, b2):
    """Meet of two basic bisections, a single bisection or None when empty.

    The pairs must nest; the exclusions of both operands are rebased onto
    the deeper pair, and an exclusion that swallows the whole result makes
    it empty.
    """
    b1, b2 = as_bisection(b1), as_bisection(b2)
    base = intersect_pairs(b1.pair, b2.pair)
    if base is None:
        return None
    excluded = []
    for b in (b1, b2):
        tau = pair_extension(base, b.pair)
        for alpha in b.excluded:
            # Z(pair.extend(alpha)) relative to Z(base = pair.extend(tau)).
            rho = strip_prefix(alpha, tau)
            if rho is not None:
                if len(rho) == 0:
                    return None  # base lies inside an excluded branch
                excluded.append(rho)
            elif is_prefix(alpha, tau):
                return None
    return BasicBisection(base, excluded)


def subtract_pair_from_bisection(b, q: PathPair):
    """Z((mu,nu) \\ F) minus the plain pair Z(q); None when empty."""
    b = as_bisection(b)
    tau = pair_extension(q, b.pair)
    if tau is not None:
        if len(tau) == 0:
            return None
        return BasicBisection(b.pair, b.excluded + (tau,))
    if pair_extension(b.pair, q) is not None:
        return None
    return b


def subtract_bisections(b, c):
    """b minus c as a list of pairwise disjoint basic bisections.

    Removing Z((eta,zeta) \\ Q) removes Z(eta,zeta) but puts back the
    excluded branches: b \\ c = (b \\ Z(eta,zeta)) plus b meet Z(eta zeta
    extended by alpha) for alpha in Q.  The antichain property of Q makes
    those put-back pieces pairwise disjoint.
    """
    b, c = as_bisection(b), as_bisection(c)
    pieces = []
    core = subtract_pair_from_bisection(b, c.pair)
    if core is not None and not is_empty(core):
        pieces.append(core)
    for alpha in c.excluded:
        back = intersect_bisections(b, BasicBisection(c.pair.extend(alpha), ()))
        if back is not None and not is_empty(back):
            pieces.append(back)
    return pieces


def disjointify(bs):
    """Rewrite a finite union of basic bisections as a disjoint union.

    Inclusion-exclusion over the nonempty subfamilies: the piece indexed by
    a subfamily is the meet of its members minus the union of the rest, so
    every point lands in exactly one piece.  Pieces are pruned by the
    emptiness decision and returned in canonical order.
    """
    bs = [as_bisection(b) for b in bs]
    bs = [b for b in bs if not is_empty(b)]
    out = []
    n = len(bs)
    for mask in range(1, 1 << n):
        chosen = [bs[i] for i in range(n) if mask >> i & 1]
        rest = [bs[i] for i in range(n) if not mask >> i & 1]
        piece = chosen[0]
        for b in chosen[1:]:
            piece = intersect_bisections(piece, b)
            if piece is None:
                break
        if piece is None or is_empty(piece):
            continue
        pieces = [piece]
        for c in rest:
            pieces = [q for p in pieces for q in subtract_bisections(p, c)]
            if not pieces:
                break
        out.extend(pieces)
    out = sorted(set(out), key=BasicBisection.sort_key)
    return out

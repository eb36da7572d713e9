"""Collapsing an acyclic region of a graph onto its retained vertices.

Pick a set of vertices to collapse whose induced subgraph is acyclic and
contains no source of the ambient graph.  The retained vertices form a new
graph whose edges are the original paths that run between retained vertices
through collapsed ones; the path map sending a new edge to the path it
abbreviates induces a bijection on paths between retained vertices and an
isomorphism of the pointed path groupoids.  ``collapse`` produces a
certificate carrying all of that data, and the check functions certify it
on bounded windows, so a corrupted certificate is caught rather than
trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cylinder import GroupoidProbe, PathPair, boundary_tails, pair_contains
from .graph import (Edge, Graph, Path, VertexSubset, concat, enumerate_paths,
                    is_acyclic, is_prefix, sources, subgraph, vertex_path)
from .report import Report
from .rings import IntegerRing
from .steinberg import convolve, from_terms, indicator

# Deterministic work caps for the windowed checks; enumeration order is
# canonical, so capping keeps reports reproducible.
_COVERAGE_PAIR_CAP = 500
_INJECTIVITY_PROBE_CAP = 4000
_MULTIPLICATIVE_COMBO_BUDGET = 65536


@dataclass(frozen=True)
class CollapseSpec:
    """A graph together with the vertex set chosen for collapsing."""

    graph: Graph
    t0: VertexSubset

    def __init__(self, graph, t0):
        if not isinstance(t0, VertexSubset):
            t0 = VertexSubset(graph, t0)
        if t0.graph is not graph:
            raise ValueError("vertex subset belongs to a different graph")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "t0", t0)

    @property
    def f0(self) -> VertexSubset:
        """The retained vertices."""
        return self.t0.complement()


def validate_collapsible(spec: CollapseSpec) -> Report:
    """Certify that the chosen vertex set admits the collapse move."""
    rep = Report("collapse preconditions")
    g, t0, f0 = spec.graph, spec.t0, spec.f0
    rep.add("shape", "collapsed", t0.render() or "(none)")
    rep.add("shape", "retained", f0.render() or "(none)")
    rep.check("shape", "retained-nonempty", len(f0) > 0,
              "" if len(f0) > 0 else "every vertex was collapsed")
    rep.check("shape", "collapsed-acyclic", is_acyclic(subgraph(g, t0)))
    stray = [v for v in sources(g) if v not in f0]
    rep.check("shape", "sources-retained", not stray,
              "" if not stray else "collapsed source %s" % stray[0])
    # The remaining classical preconditions constrain infinite emitters and
    # infinite collapsed paths; on a finite graph with an acyclic collapsed
    # region neither can occur.
    rep.check("finiteness", "finite-emission", "vacuous",
              "every vertex of a finite graph emits finitely many edges")
    rep.check("finiteness", "no-infinite-collapsed-paths", "vacuous",
              "a finite acyclic region carries no infinite path")
    return rep


def first_hit_extensions(graph: Graph, t0: VertexSubset, v):
    """Continuations from v up to their first retained vertex.

    The empty path when v is already retained; otherwise every path ranging
    at v whose interior stays collapsed and whose source is the first
    retained vertex reached.  Needs the collapsed region acyclic and free
    of graph sources, which bounds the walk.
    """
    f0 = t0.complement()
    if v in f0:
        return [vertex_path(graph, v)]
    bound = len(graph.vertices) + 1
    out = []

    def walk(path):
        u = path.source_vertex
        if u in f0:
            out.append(path)
            return
        if len(path) >= bound:
            raise ValueError("collapsed region contains a cycle through %r" % (u,))
        for e in graph.edges_with_range(u):
            walk(Path(graph, path.edges + (e.id,)))

    for e in graph.edges_with_range(v):
        walk(Path(graph, (e.id,)))
    out.sort(key=Path.sort_key)
    return out


@dataclass(frozen=True)
class CollapseCertificate:
    """The collapsed graph plus the path each new edge abbreviates.

    The constructor performs no validation on purpose: the check functions
    below are the arbiters, and tests feed them corrupted certificates.
    """

    original: Graph
    t0: VertexSubset
    collapsed: Graph
    edge_paths: dict

    @property
    def f0(self) -> VertexSubset:
        return self.t0.complement()


def collapse(spec: CollapseSpec) -> CollapseCertificate:
    """Perform the collapse move; requires a valid spec."""
    rep = validate_collapsible(spec)
    if not rep.ok:
        raise ValueError("collapse preconditions failed: %s" % ", ".join(rep.failures()))
    g, t0, f0 = spec.graph, spec.t0, spec.f0
    paths = []
    for f in f0:
        for e in g.edges_with_range(f):
            head = Path(g, (e.id,))
            for tau in first_hit_extensions(g, t0, head.source_vertex):
                paths.append(concat(head, tau))
    paths.sort(key=Path.sort_key)
    edges = [Edge(p.render(), p.range_vertex, p.source_vertex) for p in paths]
    collapsed = Graph(list(f0), edges)
    return CollapseCertificate(g, t0, collapsed,
                               {p.render(): p for p in paths})


def phi_fin(cert: CollapseCertificate, fpath: Path) -> Path:
    """The path map: expand each collapsed edge to the path it abbreviates."""
    if not fpath.edges:
        return vertex_path(cert.original, fpath.vertex)
    out = cert.edge_paths[fpath.edges[0]]
    for eid in fpath.edges[1:]:
        out = concat(out, cert.edge_paths[eid])
    return out


def phi_pair(cert: CollapseCertificate, pair: PathPair) -> PathPair:
    return PathPair(phi_fin(cert, pair.mu), phi_fin(cert, pair.nu))


def collapsed_preimage(cert: CollapseCertificate, epath: Path):
    """The collapsed path mapping to epath under phi_fin, or None.

    A path between retained vertices splits uniquely at its retained-vertex
    visits; each segment must be a declared collapsed edge.
    """
    F = cert.collapsed
    f0 = cert.f0
    if epath.range_vertex not in f0 or epath.source_vertex not in f0:
        return None
    if not epath.edges:
        return vertex_path(F, epath.vertex) if F.has_vertex(epath.vertex) else None
    g = cert.original
    ids = []
    start = 0
    for i in range(1, len(epath) + 1):
        if g.edge(epath.edges[i - 1]).source_vertex in f0:
            seg = epath.edges[start:i]
            eid = ".".join(seg)
            mapped = cert.edge_paths.get(eid)
            if mapped is None or mapped.edges != seg:
                return None
            ids.append(eid)
            start = i
    try:
        return Path(F, tuple(ids))
    except (KeyError, ValueError):
        return None


def _check_well_formed(cert: CollapseCertificate, rep: Report) -> bool:
    """Structural sanity of a certificate; shared by the check functions."""
    g, f0, t0 = cert.original, cert.f0, cert.t0
    rep.check("well-formed", "vertices-retained",
              cert.collapsed.vertices == f0.members)
    bad = None
    for fe in cert.collapsed.edges:
        p = cert.edge_paths.get(fe.id)
        if p is None or p.graph is not g or len(p) < 1:
            bad = "edge %s has no path" % fe.id
            break
        if p.range_vertex != fe.range_vertex or p.source_vertex != fe.source_vertex:
            bad = "edge %s endpoints disagree with its path" % fe.id
            break
        if p.range_vertex not in f0 or p.source_vertex not in f0:
            bad = "edge %s path not between retained vertices" % fe.id
            break
        if any(p.prefix(i).source_vertex not in t0 for i in range(1, len(p))):
            bad = "edge %s path leaves the collapsed region" % fe.id
            break
    rep.check("well-formed", "edges-abbreviate-paths", bad is None, bad or "")
    return rep.ok


def check_phi_fin_image(cert: CollapseCertificate, max_len: int) -> Report:
    """Certify the path map is a bijection onto the paths between retained
    vertices, windowed at the given original-graph path length."""
    rep = Report("path map image")
    if not _check_well_formed(cert, rep):
        return rep
    g, f0 = cert.original, cert.f0
    target = set(p for p in enumerate_paths(g, max_len=max_len)
                 if p.range_vertex in f0 and p.source_vertex in f0)
    # Collapsed edges never shorten, so collapsed paths beyond the window
    # map outside it and can be skipped outright.
    images = []
    for p in enumerate_paths(cert.collapsed, max_len=max_len):
        q = phi_fin(cert, p)
        if len(q) <= max_len:
            images.append(q)
    rep.add("window", "max-len", max_len)
    rep.add("window", "collapsed-paths", len(images))
    rep.add("window", "target-paths", len(target))
    rep.check("bijection", "injective", len(images) == len(set(images)))
    missing = sorted(target - set(images), key=Path.sort_key)
    stray = sorted(set(images) - target, key=Path.sort_key)
    rep.check("bijection", "covers-window", not missing,
              "" if not missing else "first missing %s" % missing[0].render())
    rep.check("bijection", "lands-in-window", not stray,
              "" if not stray else "first stray %s" % stray[0].render())
    return rep


def _retained_pairs(g: Graph, f0, depth: int):
    """Pairs with both ranges retained, in canonical order."""
    by_source = {}
    for p in enumerate_paths(g, max_len=depth):
        if p.range_vertex in f0:
            by_source.setdefault(p.source_vertex, []).append(p)
    pairs = []
    for v in g.vertices:
        group = by_source.get(v, [])
        pairs.extend(PathPair(a, b) for a in group for b in group)
    return pairs


def pointed_groupoid_iso_check(cert: CollapseCertificate, depth: int) -> Report:
    """Certify the collapsed groupoid sits inside the original one.

    Four windowed checks: the probe transport is well defined and pointed,
    it is injective, every basic set based at retained vertices is covered
    by transported pieces (splitting each continuation at its first
    retained-vertex visit), and indicator convolution commutes with the
    transport.
    """
    rep = Report("pointed groupoid isomorphism")
    if not _check_well_formed(cert, rep):
        return rep
    pre = validate_collapsible(CollapseSpec(cert.original, cert.t0))
    if not rep.check("well-formed", "preconditions", pre.ok,
                     "" if pre.ok else ", ".join(pre.failures())):
        return rep
    g, F, f0, t0 = cert.original, cert.collapsed, cert.f0, cert.t0

    # (a) transport of probes is defined and fixes the pointed units.
    fprobes = []
    by_source = {}
    for p in enumerate_paths(F, max_len=depth):
        by_source.setdefault(p.source_vertex, []).append(p)
    for v in F.vertices:
        group = by_source.get(v, [])
        fprobes.extend(GroupoidProbe(a, b) for a in group for b in group)
    fprobes = fprobes[:_INJECTIVITY_PROBE_CAP]
    images = []
    defect = None
    for pr in fprobes:
        try:
            images.append(GroupoidProbe(phi_fin(cert, pr.mu_full),
                                        phi_fin(cert, pr.nu_full)))
        except (KeyError, ValueError):
            defect = pr.render()
            break
    rep.add("transport", "probes", len(fprobes))
    rep.check("transport", "defined", defect is None,
              "" if defect is None else "fails at %s" % defect)
    if defect is not None:
        return rep
    units_fixed = all(phi_fin(cert, vertex_path(F, v)) == vertex_path(g, v)
                      for v in F.vertices)
    rep.check("transport", "units-fixed", units_fixed)

    # (b) injectivity on the probe window.
    rep.check("transport", "injective", len(images) == len(set(images)))

    # (c) every basic set with retained ranges splits into transported
    # pieces along the first retained-vertex visits of its continuations.
    pairs = _retained_pairs(g, f0, depth)[:_COVERAGE_PAIR_CAP]
    rep.add("coverage", "pairs", len(pairs))
    hit_sets = {}
    cover_defect = None
    for pair in pairs:
        v = pair.source_vertex
        if v not in hit_sets:
            try:
                hit_sets[v] = first_hit_extensions(g, t0, v)
            except ValueError:
                hit_sets[v] = []
        hits = hit_sets[v]
        if not hits:
            cover_defect = "%s has no retained continuation" % pair.render()
            break
        if any(a != b and is_prefix(a, b) for a in hits for b in hits):
            cover_defect = "first hits at %s are not an antichain" % v
            break
        pieces = [pair.extend(tau) for tau in hits]
        if any(collapsed_preimage(cert, q.mu) is None
               or collapsed_preimage(cert, q.nu) is None for q in pieces):
            cover_defect = "piece of %s has no collapsed preimage" % pair.render()
            break
        span = max(len(tau) for tau in hits)
        for w in boundary_tails(g, v, span):
            probe = GroupoidProbe(concat(pair.mu, w), concat(pair.nu, w))
            n = sum(1 for q in pieces if pair_contains(q, probe))
            if n != 1:
                cover_defect = "%s meets %d pieces of %s" % (
                    probe.render(), n, pair.render())
                break
        if cover_defect:
            break
    rep.check("coverage", "first-hit-splitting", cover_defect is None,
              cover_defect or "")

    # (d) indicator convolution commutes with the transport.  Every ordered
    # combination of basic pairs in the window is checked, incomposable ones
    # included (both sides must then vanish); the leg depth backs off from
    # the requested window only as far as needed to fit the combination
    # budget, so small graphs are covered exhaustively.
    ring = IntegerRing()

    def transport(x):
        return from_terms(g, ring, [(phi_pair(cert, p), c)
                                    for p, c in x.terms.items()])

    mult_depth = depth
    while True:
        fpairs = []
        for v in F.vertices:
            group = [p for p in by_source.get(v, []) if len(p) <= mult_depth]
            fpairs.extend(PathPair(a, b) for a in group for b in group)
        if len(fpairs) ** 2 <= _MULTIPLICATIVE_COMBO_BUDGET or mult_depth == 0:
            break
        mult_depth -= 1
    rep.add("multiplicative", "legs-depth", mult_depth)
    rep.add("multiplicative", "pairs", len(fpairs))
    inds = [indicator(p, ring) for p in fpairs]
    timages = [transport(x) for x in inds]
    mult_defect = None
    for a, fa, ta in zip(fpairs, inds, timages):
        for b, fb, tb in zip(fpairs, inds, timages):
            if transport(convolve(fa, fb)) != convolve(ta, tb):
                mult_defect = "%s then %s" % (a.render(), b.render())
                break
        if mult_defect:
            break
    rep.check("multiplicative", "transport-multiplicative", mult_defect is None,
              mult_defect or "")
    return rep

"""Matrix calculus over a retained vertex set, with surjectivity witnesses.

Fix a set of retained vertices meeting every orbit of the path groupoid
(``check_transversal`` decides this by reverse reachability).  Basic pairs
then sort into a 2x2 block pattern by whether the range vertices of the two
legs are retained, and a ``LinkingElement`` holds one algebra element per
block.  Block (1,1) constrains both legs, the off-diagonal blocks constrain
one leg each, and block (2,2) constrains nothing, so the blocks overlap as
supports even though ``corner_of`` classifies each single pair into exactly
one cell.  Convolution becomes 2x2 matrix multiplication, ``psi`` and
``phi`` are the off-diagonal products landing in the diagonal blocks, and
``surjectivity_witness`` factors any single-pair indicator through the
off-diagonal blocks, so the diagonal algebras form a surjective context.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .collapse import (CollapseSpec, collapse, pointed_groupoid_iso_check,
                       validate_collapsible)
from .cylinder import PathPair, compose_pairs, intersect_pairs, invert_pair
from .graph import Graph, Path, VertexSubset, concat, enumerate_paths, vertex_path
from .report import Report
from .steinberg import SteinbergElement, add, convolve, indicator, zero

_WITNESS_CAP = 200


class CornerSupportError(ValueError):
    """An element or pair fails its block's support pattern."""


class LinkingInvariantError(RuntimeError):
    """A matrix product left its block pattern; indicates an internal bug."""


class Corner(enum.Enum):
    GG = "GG"   # both range vertices retained
    GZ = "GZ"   # first leg retained only
    ZG = "ZG"   # second leg retained only
    HH = "HH"   # neither retained

    def render(self):
        return self.value


# Cell lookup by (first leg retained?, second leg retained?); the same flags
# read as block support requirements: True means that leg must be retained.
_CELLS = {(True, True): Corner.GG, (True, False): Corner.GZ,
          (False, True): Corner.ZG, (False, False): Corner.HH}
_REQUIRES = {c: flags for flags, c in _CELLS.items()}


@dataclass(frozen=True)
class Transversal:
    """A graph with a retained vertex set acting as the orbit transversal."""

    graph: Graph
    f0: VertexSubset

    def __init__(self, graph, f0):
        if not isinstance(f0, VertexSubset):
            f0 = VertexSubset(graph, f0)
        if f0.graph is not graph:
            raise ValueError("vertex subset belongs to a different graph")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "f0", f0)


def least_connectors(graph: Graph, f0):
    """For each vertex v, the least path with source v ranging at a retained
    vertex, or None; least means shortest, then lexicographic.

    Relaxation over edges converges because each entry only improves within
    a finite candidate set.
    """
    best = {v: vertex_path(graph, v) for v in f0}

    def key(p):
        return (len(p), p.sort_key())

    changed = True
    while changed:
        changed = False
        for e in graph.edges:
            upstream = best.get(e.range_vertex)
            if upstream is None or len(upstream) >= len(graph.vertices):
                continue
            cand = concat(upstream, Path(graph, (e.id,)))
            cur = best.get(e.source_vertex)
            if cur is None or key(cand) < key(cur):
                best[e.source_vertex] = cand
                changed = True
    return {v: best.get(v) for v in graph.vertices}


@dataclass(frozen=True)
class TransversalCheck:
    ok: bool
    unreachable: tuple
    connectors: dict

    def __bool__(self):
        return self.ok


def check_transversal(graph: Graph, f0) -> TransversalCheck:
    """Decide whether every vertex connects into the retained set.

    A vertex passes when some path with that source ranges at a retained
    vertex; shifting any boundary path to a visited vertex and prepending
    such a connector then lands its orbit over the retained set.  The
    witnesses double as the connectors the surjectivity construction uses.
    """
    if not isinstance(f0, VertexSubset):
        f0 = VertexSubset(graph, f0)
    connectors = least_connectors(graph, f0)
    unreachable = tuple(v for v in graph.vertices if connectors[v] is None)
    return TransversalCheck(not unreachable, unreachable, connectors)


# -- corners ----------------------------------------------------------------


def corner_of(p: PathPair, f0) -> Corner:
    """The unique cell of a basic pair."""
    return _CELLS[(p.mu.range_vertex in f0, p.nu.range_vertex in f0)]


def pair_supported_in(p: PathPair, f0, corner: Corner) -> bool:
    row_req, col_req = _REQUIRES[corner]
    return ((not row_req or p.mu.range_vertex in f0)
            and (not col_req or p.nu.range_vertex in f0))


def element_supported_in(f: SteinbergElement, f0, corner: Corner) -> bool:
    return all(pair_supported_in(p, f0, corner) for p in f.terms)


def _require_support(f: SteinbergElement, f0, corner: Corner, role):
    for p in f.terms:
        if not pair_supported_in(p, f0, corner):
            raise CornerSupportError(
                "%s term %s violates the %s support pattern"
                % (role, p.render(), corner.render()))


# -- the 2x2 matrix algebra --------------------------------------------------


_BLOCK_CORNERS = {"f11": Corner.GG, "f12": Corner.GZ,
                  "f21": Corner.ZG, "f22": Corner.HH}


class LinkingElement:
    """Four block-supported algebra elements forming one matrix element."""

    __slots__ = ("transversal", "ring", "f11", "f12", "f21", "f22")

    def __init__(self, transversal, ring, f11=None, f12=None, f21=None, f22=None):
        g, f0 = transversal.graph, transversal.f0
        for name, f in (("f11", f11), ("f12", f12), ("f21", f21), ("f22", f22)):
            if f is None:
                f = zero(g, ring)
            elif f.graph is not g or f.ring != ring:
                raise ValueError("block %s lives on a different graph or ring" % name)
            _require_support(f, f0, _BLOCK_CORNERS[name], "block %s" % name)
            object.__setattr__(self, name, f)
        object.__setattr__(self, "transversal", transversal)
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("LinkingElement is immutable")

    def blocks(self):
        return (self.f11, self.f12, self.f21, self.f22)

    def is_zero(self):
        return all(f.is_zero() for f in self.blocks())

    def __eq__(self, other):
        if not isinstance(other, LinkingElement):
            return NotImplemented
        return (self.transversal == other.transversal and self.ring == other.ring
                and self.blocks() == other.blocks())

    def __hash__(self):
        return hash((self.transversal, self.ring, self.blocks()))

    def render(self):
        return "[[%s | %s] [%s | %s]]" % tuple(f.render() for f in self.blocks())

    def __repr__(self):
        return self.render()


def linking_zero(transversal, ring) -> LinkingElement:
    return LinkingElement(transversal, ring)


def embed(transversal, f: SteinbergElement, which: Corner) -> LinkingElement:
    """Place a diagonal-block element into the matrix algebra."""
    if which == Corner.GG:
        return LinkingElement(transversal, f.ring, f11=f)
    if which == Corner.HH:
        return LinkingElement(transversal, f.ring, f22=f)
    raise CornerSupportError("embed targets a diagonal block, not %s" % which.render())


def _check_linking_compatible(a: LinkingElement, b: LinkingElement):
    if a.transversal.graph is not b.transversal.graph or a.ring != b.ring:
        raise ValueError("matrix elements live over different algebras")
    if a.transversal.f0.members != b.transversal.f0.members:
        raise ValueError("matrix elements use different retained sets")


def linking_add(a: LinkingElement, b: LinkingElement) -> LinkingElement:
    _check_linking_compatible(a, b)
    return LinkingElement(a.transversal, a.ring,
                          f11=add(a.f11, b.f11), f12=add(a.f12, b.f12),
                          f21=add(a.f21, b.f21), f22=add(a.f22, b.f22))


def linking_convolve(a: LinkingElement, b: LinkingElement) -> LinkingElement:
    """2x2 matrix product with entrywise convolution.

    Convolution concatenates at the inner legs and keeps the outer range
    vertices, so each product entry lands in its block; a violation cannot
    come from user input and is raised as an internal invariant failure.
    """
    _check_linking_compatible(a, b)
    f11 = add(convolve(a.f11, b.f11), convolve(a.f12, b.f21))
    f12 = add(convolve(a.f11, b.f12), convolve(a.f12, b.f22))
    f21 = add(convolve(a.f21, b.f11), convolve(a.f22, b.f21))
    f22 = add(convolve(a.f21, b.f12), convolve(a.f22, b.f22))
    try:
        return LinkingElement(a.transversal, a.ring,
                              f11=f11, f12=f12, f21=f21, f22=f22)
    except CornerSupportError as exc:
        raise LinkingInvariantError(str(exc)) from exc


# -- the context maps --------------------------------------------------------


def psi(transversal, m: SteinbergElement, n: SteinbergElement) -> SteinbergElement:
    """The balanced product of a (1,2)-block and a (2,1)-block element."""
    f0 = transversal.f0
    _require_support(m, f0, Corner.GZ, "psi left factor")
    _require_support(n, f0, Corner.ZG, "psi right factor")
    out = convolve(m, n)
    if not element_supported_in(out, f0, Corner.GG):
        raise LinkingInvariantError("psi product left its block")
    return out


def phi(transversal, n: SteinbergElement, m: SteinbergElement) -> SteinbergElement:
    """The balanced product in the other order, landing in block (2,2)."""
    f0 = transversal.f0
    _require_support(n, f0, Corner.ZG, "phi left factor")
    _require_support(m, f0, Corner.GZ, "phi right factor")
    return convolve(n, m)


def eq_ops_check(transversal, m, m_prime, n, n_prime) -> bool:
    """Both compatibility identities between psi and phi, checked exactly.

    The left factors multiply through one map and the right factors through
    the other; agreement is associativity of the matrix convolution.
    """
    f0 = transversal.f0
    _require_support(m, f0, Corner.GZ, "m")
    _require_support(m_prime, f0, Corner.GZ, "m'")
    _require_support(n, f0, Corner.ZG, "n")
    _require_support(n_prime, f0, Corner.ZG, "n'")
    first = convolve(n_prime, psi(transversal, m, n)) == \
        convolve(phi(transversal, n_prime, m), n)
    second = convolve(m_prime, phi(transversal, n, m)) == \
        convolve(psi(transversal, m_prime, n), m)
    return first and second


# -- surjectivity witnesses ---------------------------------------------------


@dataclass(frozen=True)
class MoritaWitness:
    """Off-diagonal factor pairs reconstructing a single-pair indicator.

    Each piece is (v_i, n_i) with v_i in the (1,2) block and n_i in the
    (2,1) block; the psi side sums v_i * n_i and the phi side n_i * v_i.
    """

    side: str
    target: PathPair
    pieces: tuple
    report: Report

    @property
    def ok(self):
        return self.report.ok


def surjectivity_witness(transversal, ring, pair: PathPair, side: str) -> MoritaWitness:
    """Factor the indicator of one basic pair through the off-diagonal blocks.

    The psi side covers the range unit set of the pair by itself (already
    over the retained set); the phi side routes through the least connector
    from the pair's source vertex into the retained set, which exists
    whenever check_transversal passes.
    """
    if side not in ("psi", "phi"):
        raise ValueError("side must be 'psi' or 'phi'")
    g, f0 = transversal.graph, transversal.f0
    rep = Report("surjectivity witness (%s side)" % side)
    rep.add("target", "pair", pair.render())
    rep.add("target", "cell", corner_of(pair, f0).render())
    pieces = []
    if side == "psi":
        if not rep.check("target", "supported", corner_of(pair, f0) == Corner.GG,
                         "psi targets need both legs retained"):
            return MoritaWitness(side, pair, (), rep)
        v1 = PathPair(pair.mu, pair.mu)
        pieces = [(v1, compose_pairs(invert_pair(v1), pair))]
    else:
        conn = least_connectors(g, f0).get(pair.source_vertex)
        if not rep.check("target", "connector-exists", conn is not None,
                         "vertex %s cannot reach the retained set"
                         % pair.source_vertex):
            return MoritaWitness(side, pair, (), rep)
        rep.add("target", "connector", conn.render())
        v1 = PathPair(conn, pair.nu)
        pieces = [(v1, compose_pairs(pair, invert_pair(v1)))]

    for i, (v, n) in enumerate(pieces, start=1):
        rep.check("factors", "piece-%d-blocks" % i,
                  pair_supported_in(v, f0, Corner.GZ)
                  and pair_supported_in(n, f0, Corner.ZG))
    if len(pieces) > 1:
        rep.check("factors", "pieces-disjoint",
                  all(intersect_pairs(a[0], b[0]) is None
                      for i, a in enumerate(pieces) for b in pieces[i + 1:]))
    else:
        rep.check("factors", "pieces-disjoint", "vacuous", "single piece")

    # The unit sets of the off-diagonal factors tile the matching unit set
    # of the target: range units on the psi side, source units on the phi.
    unit_sum = zero(g, ring)
    for v, _ in pieces:
        if side == "psi":
            unit_sum = add(unit_sum, convolve(indicator(v, ring),
                                              indicator(invert_pair(v), ring)))
        else:
            unit_sum = add(unit_sum, convolve(indicator(invert_pair(v), ring),
                                              indicator(v, ring)))
    unit_target = PathPair(pair.mu, pair.mu) if side == "psi" \
        else PathPair(pair.nu, pair.nu)
    rep.check("verification", "unit-cover", unit_sum == indicator(unit_target, ring))

    direct = zero(g, ring)
    for v, n in pieces:
        left, right = (v, n) if side == "psi" else (n, v)
        direct = add(direct, convolve(indicator(left, ring), indicator(right, ring)))
    rep.check("verification", "reconstructs", direct == indicator(pair, ring))

    total = linking_zero(transversal, ring)
    for v, n in pieces:
        mv = LinkingElement(transversal, ring, f12=indicator(v, ring))
        mn = LinkingElement(transversal, ring, f21=indicator(n, ring))
        prod = linking_convolve(mv, mn) if side == "psi" else linking_convolve(mn, mv)
        total = linking_add(total, prod)
    want = embed(transversal, indicator(pair, ring),
                 Corner.GG if side == "psi" else Corner.HH)
    rep.check("verification", "matrix-reconstructs", total == want)
    return MoritaWitness(side, pair, tuple(pieces), rep)


# -- the end-to-end report -----------------------------------------------------


def pairs_to_depth(g: Graph, depth: int):
    by_source = {}
    for p in enumerate_paths(g, max_len=depth):
        by_source.setdefault(p.source_vertex, []).append(p)
    pairs = []
    for v in g.vertices:
        group = by_source.get(v, [])
        pairs.extend(PathPair(a, b) for a in group for b in group)
    return pairs


def morita_report(graph: Graph, t0, ring, depth=2, seed=0, eq_samples=20) -> Report:
    """The full pipeline certifying the context over a collapse instance.

    Requires the collapse preconditions (raised otherwise); transversal
    failure is reported, not raised, because it is a certified negative
    answer rather than bad input.
    """
    from . import sampling

    spec = CollapseSpec(graph, t0)
    pre = validate_collapsible(spec)
    if not pre.ok:
        raise ValueError("collapse preconditions failed: %s" % ", ".join(pre.failures()))
    f0 = spec.f0
    transversal = Transversal(graph, f0)
    rep = Report("morita context")
    rep.add("setup", "graph", "%d vertices, %d edges"
            % (len(graph.vertices), len(graph.edges)))
    rep.add("setup", "collapsed", spec.t0.render() or "(none)")
    rep.add("setup", "retained", f0.render())
    rep.add("setup", "ring", ring.name)
    rep.add("setup", "depth", depth)
    rep.add("setup", "seed", seed)

    trans = check_transversal(graph, f0)
    rep.check("transversal", "meets-every-orbit", trans.ok,
              "" if trans.ok else "unreachable: %s" % ",".join(trans.unreachable))

    pairs = pairs_to_depth(graph, depth)
    cells = {c: 0 for c in Corner}
    for p in pairs:
        cells[corner_of(p, f0)] += 1
    for c in Corner:
        rep.add("corners", c.render(), cells[c])

    if trans.ok:
        for side in ("psi", "phi"):
            targets = [p for p in pairs
                       if side == "phi" or corner_of(p, f0) == Corner.GG]
            capped = targets[:_WITNESS_CAP]
            rep.add("witnesses", "%s-targets" % side,
                    "%d of %d" % (len(capped), len(targets)))
            bad = None
            for p in capped:
                w = surjectivity_witness(transversal, ring, p, side)
                if not w.ok:
                    bad = "%s: %s" % (p.render(), ", ".join(w.report.failures()))
                    break
            rep.check("witnesses", "%s-verified" % side, bad is None, bad or "")
    else:
        rep.check("witnesses", "skipped", "vacuous", "transversal failed")

    rng = sampling.rng_from_seed(seed)
    tuples = 0
    eq_bad = None
    for _ in range(eq_samples):
        m1 = sampling.random_corner_element(rng, graph, ring, f0, Corner.GZ)
        m2 = sampling.random_corner_element(rng, graph, ring, f0, Corner.GZ)
        n1 = sampling.random_corner_element(rng, graph, ring, f0, Corner.ZG)
        n2 = sampling.random_corner_element(rng, graph, ring, f0, Corner.ZG)
        tuples += 1
        if not eq_ops_check(transversal, m1, m2, n1, n2):
            eq_bad = "tuple %d" % tuples
            break
    rep.add("eq-ops", "tuples", tuples)
    rep.check("eq-ops", "identities", eq_bad is None, eq_bad or "")

    cert = collapse(spec)
    rep.add("collapse", "collapsed-graph", "%d vertices, %d edges"
            % (len(cert.collapsed.vertices), len(cert.collapsed.edges)))
    iso = pointed_groupoid_iso_check(cert, depth)
    rep.check("collapse", "groupoid-isomorphism", iso.ok,
              "" if iso.ok else ", ".join(iso.failures()))

    verdict = rep.ok
    rep.check("context", "surjective-morita-context", verdict)
    return rep

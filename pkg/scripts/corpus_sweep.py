"""Sweep random graphs: relations, oracle spot checks, collapse certificates.

Aggregates the module's main certifications over a reproducible corpus and
prints one summary line per stage.  Exit status 0 means every instance
certified.

Usage: python3 scripts/corpus_sweep.py [--count 20] [--seed 7] [--depth 2]
"""

import argparse
import sys
import time

from steinalg import (IntegerRing, IntegersMod, RationalRing,
                      check_ck_relations, check_phi_fin_image, collapse,
                      convolve, evaluate, oracle_convolve_at,
                      pointed_groupoid_iso_check)
from steinalg import sampling

RINGS = (IntegerRing(), RationalRing(), IntegersMod(4))


def sweep_relations(graphs):
    bad = 0
    for g in graphs:
        for ring in RINGS:
            if not check_ck_relations(g, ring).ok:
                bad += 1
    return bad


def sweep_oracle(graphs, rng, pairs_per_graph=10, probes_per_pair=20):
    bad = 0
    for g in graphs:
        for _ in range(pairs_per_graph):
            ring = RINGS[rng.randint(0, len(RINGS) - 1)]
            f = sampling.random_element(rng, g, ring)
            h = sampling.random_element(rng, g, ring)
            prod = convolve(f, h)
            depth = 1 + max(f.max_path_len(), h.max_path_len(),
                            prod.max_path_len())
            for _ in range(probes_per_pair):
                anchor = sampling.random_pair(rng, g)
                pr = sampling.random_adequate_probe(rng, g, anchor, depth)
                if evaluate(prod, pr) != oracle_convolve_at(f, h, pr):
                    bad += 1
    return bad


def sweep_collapses(specs, depth):
    bad = 0
    for spec in specs:
        cert = collapse(spec)
        if not check_phi_fin_image(cert, max_len=depth + 2).ok:
            bad += 1
        if not pointed_groupoid_iso_check(cert, depth=depth).ok:
            bad += 1
    return bad


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=20)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--depth", type=int, default=2)
    args = parser.parse_args(argv)

    start = time.monotonic()
    graphs = sampling.corpus_graphs(args.seed, args.count)
    specs = sampling.collapse_corpus(args.seed + 1, args.count)
    failures = 0

    bad = sweep_relations(graphs)
    print("relations: %d graphs x %d rings, %d failures"
          % (len(graphs), len(RINGS), bad))
    failures += bad

    rng = sampling.rng_from_seed(args.seed + 2)
    bad = sweep_oracle(graphs, rng)
    print("oracle: %d graphs spot-checked, %d disagreements" % (len(graphs), bad))
    failures += bad

    bad = sweep_collapses(specs, args.depth)
    print("collapse: %d instances at depth %d, %d failures"
          % (len(specs), args.depth, bad))
    failures += bad

    print("sweep %s in %.1fs" % ("passed" if failures == 0 else "FAILED",
                                 time.monotonic() - start))
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())

"""Sharper bounds from the substituted system.

Introducing s_i = x_i^2 + y_i^2 shrinks the Newton polytopes. For
graphs built purely by degree-2 additions the system factors into one
3-dimensional block per added vertex (each contributing a factor 2),
giving the tight bound 2^(n-2). For the two six-vertex graphs that
need an edge swap the full branch-and-prune enumeration reports 32,
beating both the degree product (4096) and the binomial bound (70).
"""

import time

from lamanmv import (
    Framework,
    FORM_SOE,
    FORM_SUBSOE,
    borcea_streinu_bound,
    desargues_graph,
    henneberg_apply,
    k33_graph,
    mv_for_graph,
    random_henneberg_sequence,
)


def framework(g):
    return Framework.make(g, {e: i + 2 for i, e in enumerate(sorted(g.edges))})


print("Degree-2-built graphs (mixed volume = 2^(n-2)):")
for n in range(3, 7):
    g = henneberg_apply(random_henneberg_sequence(n, seed=3 * n))
    res = mv_for_graph(framework(g), FORM_SUBSOE, seed=0)
    blocks = [len(b.coordinates) for b in res.blocks]
    print(f"  n={n}: {int(res.value):>3}   coordinate blocks {blocks}")

print("\nSix-vertex graphs needing an edge swap:")
for name, g in (("prism", desargues_graph()), ("bipartite 3x3", k33_graph())):
    t0 = time.perf_counter()
    res = mv_for_graph(framework(g), FORM_SUBSOE, seed=0)
    print(f"  {name}: substituted bound {res.value} "
          f"(degree product 4096, binomial bound {borcea_streinu_bound(6)}) "
          f"in {time.perf_counter() - t0:.1f}s")
    soe = mv_for_graph(framework(g), FORM_SOE, seed=0)
    print(f"    distance-system bound for comparison: {soe.value}")

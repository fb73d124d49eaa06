"""Graph files, report assembly and JSON encoding.

File format: line oriented, `#` comments, `n <count>` then one
`e <i> <j> [length]` per edge. Lengths are rationals ("5", "7/2") or
decimals ("2.5", parsed exactly). Either every edge carries a length or
none does; in the latter case lengths default to the tight construction
recipe for degree-2-constructible graphs and to 1, 2, 3, ... in sorted
edge order otherwise.
"""

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import embeddings, mixedvol, polysys
from .errors import InputError
from .graphs import (
    HENNEBERG_I,
    Framework,
    Graph,
    check_laman,
    classify,
    edge_key,
    henneberg_decompose,
)


def parse_graph_file(text):
    """Framework from the line-oriented graph format."""
    n = None
    edges = []
    lengths = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if n is not None:
                raise InputError(f"line {lineno}: duplicate vertex count")
            if len(parts) != 2:
                raise InputError(f"line {lineno}: expected 'n <count>'")
            try:
                n = int(parts[1])
            except ValueError:
                raise InputError(f"line {lineno}: bad vertex count {parts[1]!r}")
        elif parts[0] == "e":
            if len(parts) not in (3, 4):
                raise InputError(f"line {lineno}: expected 'e <i> <j> [length]'")
            try:
                i, j = int(parts[1]), int(parts[2])
            except ValueError:
                raise InputError(f"line {lineno}: bad vertex labels")
            if i == j:
                raise InputError(f"line {lineno}: loop edge ({i},{j})")
            key = edge_key(i, j)
            if key in (e for e, _ in edges):
                raise InputError(f"line {lineno}: duplicate edge {key}")
            length = None
            if len(parts) == 4:
                try:
                    length = Fraction(parts[3])
                except (ValueError, ZeroDivisionError):
                    raise InputError(f"line {lineno}: bad length {parts[3]!r}")
                if length <= 0:
                    raise InputError(f"line {lineno}: non-positive length")
            edges.append((key, lineno))
            if length is not None:
                lengths[key] = length
        else:
            raise InputError(f"line {lineno}: unknown directive {parts[0]!r}")
    if n is None:
        raise InputError("missing 'n <count>' line")
    graph = Graph.make(n, [e for e, _ in edges])
    if lengths and len(lengths) != len(edges):
        missing = next(e for e, _ in edges if e not in lengths)
        raise InputError(f"edge {missing} has no length but others do")
    if not lengths:
        lengths = default_lengths(graph)
    return Framework.make(graph, lengths)


def default_lengths(graph):
    """Deterministic lengths: tight recipe when possible, else 1,2,3,..."""
    if check_laman(graph)["laman"] and classify(graph) == HENNEBERG_I:
        dec = henneberg_decompose(graph, only_step1=True)
        tight = embeddings.tight_lengths(dec.sequence)
        return {
            edge_key(dec.to_original(a), dec.to_original(b)): l
            for (a, b), l in tight.lengths.items()
        }
    return {e: Fraction(i + 1) for i, e in enumerate(sorted(graph.edges))}


def borcea_streinu_bound(n):
    """Binomial comparison bound on the embedding count."""
    return math.comb(2 * n - 4, n - 2)


@dataclass
class Report:
    n: int
    edges: list
    laman: bool
    laman_witness: Optional[list]
    henneberg_class: Optional[str]
    bezout_soe: Optional[int]
    bezout_subsoe: Optional[int]
    mv_soe: Optional[dict]
    mv_subsoe: Optional[dict]
    borcea_streinu: Optional[int]
    embedding_count: Optional[int]
    witness_degenerate: Optional[bool]
    seed: int
    timings: dict = field(default_factory=dict)

    def validate(self):
        if self.mv_soe is not None and self.bezout_soe is not None:
            if self.mv_soe["value"] > self.bezout_soe:
                raise InputError("mv exceeds degree product for the distance system")
        if self.mv_subsoe is not None and self.bezout_subsoe is not None:
            if self.mv_subsoe["value"] > self.bezout_subsoe:
                raise InputError("mv exceeds degree product for the substituted system")

    def to_dict(self, include_timings=True):
        out = {
            "graph": {"n": self.n, "edges": [list(e) for e in self.edges]},
            "laman": self.laman,
            "laman_witness": self.laman_witness,
            "class": self.henneberg_class,
            "bezout_soe": self.bezout_soe,
            "bezout_subsoe": self.bezout_subsoe,
            "mv_soe": self.mv_soe,
            "mv_subsoe": self.mv_subsoe,
            "borcea_streinu_bound": self.borcea_streinu,
            "embedding_count": self.embedding_count,
            "witness_degenerate": self.witness_degenerate,
            "seed": self.seed,
        }
        if include_timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


def mv_result_dict(res):
    """JSON-ready summary of an MVResult (value must be integral)."""
    value = res.value
    as_int = int(value) if value == int(value) else None
    out = {
        "value": as_int if as_int is not None else str(value),
        "method": res.method,
        "seed": res.lifting_seed,
        "cell_count": len(res.cells),
    }
    if res.blocks:
        out["blocks"] = [
            {
                "polytopes": list(b.polytope_indices),
                "coordinates": list(b.coordinates),
                "value": str(b.value),
                "cells": len(b.cells),
            }
            for b in res.blocks
        ]
    return out


def cells_dict(res):
    """Full cell certificate listing for JSON output."""
    return [
        {
            "edges": [[[str(x) for x in a], [str(x) for x in b]] for a, b in r.cell.edges],
            "det": str(r.det),
            "strict": r.strict,
        }
        for r in res.cells
    ]


def build_report(framework, seed=0, tight=False, deadline=None, threads=1):
    """Assemble the full report for a framework."""
    g = framework.graph
    timings = {}
    t0 = time.monotonic()
    lam = check_laman(g)
    timings["laman_check"] = time.monotonic() - t0
    report = Report(
        n=g.n,
        edges=g.sorted_edges(),
        laman=lam["laman"],
        laman_witness=lam["witness"],
        henneberg_class=None,
        bezout_soe=None,
        bezout_subsoe=None,
        mv_soe=None,
        mv_subsoe=None,
        borcea_streinu=borcea_streinu_bound(g.n) if g.n >= 2 else None,
        embedding_count=None,
        witness_degenerate=None,
        seed=seed,
    )
    if not lam["laman"]:
        return report
    t0 = time.monotonic()
    report.henneberg_class = classify(g)
    timings["classify"] = time.monotonic() - t0

    fw = mixedvol._base_framework(framework)
    soe = polysys.build_soe(fw)
    subsoe = polysys.build_subsoe(fw)
    report.bezout_soe = polysys.bezout(soe)
    report.bezout_subsoe = polysys.bezout(subsoe)

    t0 = time.monotonic()
    cert = mixedvol.certify_general_bound(g)
    report.mv_soe = mv_result_dict(cert)
    timings["mv_soe_certificate"] = time.monotonic() - t0

    t0 = time.monotonic()
    sub = mixedvol.mv_for_graph(
        framework, polysys.FORM_SUBSOE, seed=seed, deadline=deadline, threads=threads
    )
    report.mv_subsoe = mv_result_dict(sub)
    timings["mv_subsoe"] = time.monotonic() - t0

    t0 = time.monotonic()
    report.witness_degenerate = polysys.witness_check(framework)
    timings["witness_check"] = time.monotonic() - t0

    if report.henneberg_class == HENNEBERG_I:
        t0 = time.monotonic()
        dec = henneberg_decompose(g, only_step1=True)
        if tight:
            fw_embed = embeddings.tight_lengths(dec.sequence)
        else:
            relabel = {orig: rep for rep, orig in dec.relabeling.items()}
            fw_embed = framework.relabel(relabel)
        embs = embeddings.enumerate_h1(fw_embed, dec.sequence)
        report.embedding_count = len(embs)
        if tight and report.embedding_count != 2 ** (g.n - 2):
            raise InputError("tight lengths failed to realize the full count")
        timings["embeddings"] = time.monotonic() - t0
    report.timings = timings
    report.validate()
    return report


def to_json(payload, indent=2):
    return json.dumps(payload, indent=indent, sort_keys=True)

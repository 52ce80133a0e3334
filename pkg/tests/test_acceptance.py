"""Acceptance criteria 1-13, one test each.

Each test stores (ok, note) in RESULTS before asserting; conftest prints the
table at the end of a pytest run, and ``python tests/test_acceptance.py``
prints it directly.
"""
import os
import sys
from collections import Counter

import numpy as np
from click.testing import CliRunner

from artin import algebra as ab
from artin import arquiver as aq
from artin import auslander as au
from artin import cli
from artin import functcat as fc
from artin import modcat as mc
from artin import morphcat as mh
from artin import widecat as wc

RESULTS: dict = {}

F2 = lambda: ab.field_algebra(2)
DUAL = lambda: ab.truncated_polynomial(3, 2)
A2 = lambda: ab.linear_a2(3)
CUBIC = lambda: ab.truncated_polynomial(2, 3)
ALGDIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "algebras")


def record(k: int, ok: bool, note: str = ""):
    RESULTS[k] = (bool(ok), note)
    assert ok, note


def test_semisimple_baseline():
    alg = F2()
    hq = mh.ar_quiver_H(alg)
    k = mc.simple(alg, 0)
    c = mh.almost_split_H(mh.to_zero(k))
    nonproj = [o for o in hq.objects if not mh.is_projective_H(o)]
    ok = (len(hq.objects) == 3 and len(nonproj) == 1
          and mh.is_iso_H(c.start, mh.zero_to(k)) and mh.is_iso_H(c.middle, mh.identity_object(k))
          and mh.verify_almost_split_H(c, hq.objects)
          and len(au.gamma_A(alg).vertices) == 1)
    record(1, ok, f"Γ_H {len(hq.objects)} vertices, {len(nonproj)} sequence, Γ_A {len(au.gamma_A(alg).vertices)}")


def test_dual_numbers_cycle():
    alg = DUAL()
    q = aq.ar_quiver(alg)
    dims = sorted(v.dim for v in q.vertices)
    s = mc.simple(alg, 0)
    a_dim = fc.auslander_algebra(alg).alg.dim
    rep = au.thm_7_5_pipeline(alg)
    ok = dims == [1, 2] and a_dim == 5 and aq.property_star(s) and rep.ok and rep.finite_type
    record(2, ok, f"dims {dims}, dim A {a_dim}, cycle length {rep.cycle_length}")


def test_sigma_is_identity():
    counts = {}
    ok = True
    for make in (F2, DUAL, A2, CUBIC):
        alg = make()
        table = wc.sigma_X(wc.whole_category(alg))
        ok &= table.is_identity()
        counts[alg.name] = len(table.images)
    record(3, ok, f"indecomposables checked {counts}")


def test_theta_of_cw_sequences():
    rows = []
    for make in (DUAL, A2):
        rows += fc.verify_thm_4_9(make())
    checked = [r for r in rows if r.branch == "cw"]
    excluded = len(rows) - len(checked)
    ok = bool(checked) and all(r.ok for r in checked)
    record(4, ok, f"{len(checked)} sequences, {excluded} type (c) ends excluded")


def test_kernel_law():
    r = fc.verify_kernel_law(DUAL())
    record(5, r.ok, f"{r.dims['objects']} objects, {r.dims['maps']} maps, "
                    f"{r.dims['killed_and_factored']} factored")


def test_constructed_sequences_match():
    n = 0
    ok = True
    for make in (DUAL, CUBIC):
        alg = make()
        hq = mh.ar_quiver_H(alg)
        for _, delta in aq.ar_quiver(alg).ases.items():
            built = list(mh.boundary_ases(delta))
            if not mc.is_projective_module(delta.start):
                built.append(mh.composite_ases(delta, aq.almost_split_ending(delta.start)))
            for conf in built:
                n += 1
                ok &= (mh.verify_almost_split_H(conf, hq.objects)
                       and mh.conflations_isomorphic(conf, mh.almost_split_H(conf.end)))
    record(6, ok and n > 0, f"{n} constructed sequences")


def test_degreewise_split():
    n = 0
    ok = True
    for make in (DUAL, A2, CUBIC):
        rows = [r for r in mh.verify_cor_4_6(make()) if r["applies"]]
        n += len(rows)
        ok &= all(r["split"] for r in rows)
    record(7, ok and n > 0, f"{n} sequences with splittings")


def test_h_translate_periodicity():
    notes = []
    ok = True
    for make in (DUAL, CUBIC):
        alg = make()
        p73 = au.verify_prop_7_3(alg)
        p74 = au.verify_thm_7_4(alg)
        ok &= all(r.ok and r.dims["tau4_is_A"] for r in p73)
        ok &= all(r.dims["period_mod_4"] for r in p74)
        notes.append(f"{alg.name} periods {[r.dims['period'] for r in p74]}")
    record(8, ok, "; ".join(notes))


def test_stable_auslander_simples():
    alg = CUBIC()
    sa = fc.stable_auslander(alg).alg
    reps = [fc.verify_thm_6_2(alg, v) for v in range(sa.nvert)
            if not mc.is_projective_module(mc.simple(sa, v))]
    n_dual = fc.n_lambda(DUAL()).n
    ok = bool(reps) and all(r.ok for r in reps) and n_dual == 0
    # n_lambda raises unless the three sets match up; A3 gives a non-empty instance
    counts = [fc.n_lambda(alg), fc.n_lambda(ab.load_algebra(os.path.join(ALGDIR, "a3_f3.json")))]
    ok &= all(len(c.set1) == len(c.set2) == len(c.set3) == c.n for c in counts)
    record(9, ok, f"{len(reps)} simples, n = {counts[0].n} (A3: {counts[1].n}), n(dual numbers) = {n_dual}")


def test_corepresentable_sequences():
    n = 0
    ok = True
    for make in (DUAL, A2):
        alg = make()
        for m in fc._indecomposables(alg):
            r = fc.verify_cor_5_11(alg, m)
            ok &= r.ok
            n += 1
    record(10, ok, f"{n} indecomposables")


def test_t2_agreement():
    hq = mh.ar_quiver_H(DUAL())
    n = 0
    ok = True
    for o in hq.objects:
        if mh.is_projective_H(o):
            continue
        n += 1
        ok &= mh.is_iso_H(mh.tau_H_structural(o), mh.tau_H_t2(o))
    record(11, ok and n > 0, f"{n} non-projective objects")


def test_frobenius():
    reps = [au.frobenius_check(make()) for make in (DUAL, CUBIC)]
    ok = all(r.ok and r.equal for r in reps)
    record(12, ok, ", ".join(f"{r.algebra}: {len(r.projectives)} projectives" for r in reps))


def _scrambled_sum(mods):
    """Direct sum transported along a fixed random change of basis, so blocks are hidden."""
    total = mc.direct_sum(mods)[0]
    alg, p = total.alg, total.p
    rng = np.random.default_rng(1)
    gs = []
    for n in total.dims:
        g = rng.integers(0, p, (n, n))
        while n and mc.el.rank(g, p) < n:
            g = rng.integers(0, p, (n, n))
        gs.append(g)
    mats = [gs[alg.tgt[b]] @ m @ mc.el.inverse(gs[alg.src[b]], p) if m.size else m
            for b, m in zip(alg.gens, total.mats)]
    return mc.Module(alg, total.dims, mats, check=True)


def test_determinism():
    ok = True
    for make in (CUBIC, A2):
        alg = make()
        q = aq.ar_quiver(alg)
        mods = [q.vertices[i] for i in aq.export_order(q)]
        big = _scrambled_sum(mods + mods[:2])
        expected = Counter(aq.export_order(q)) + Counter(aq.export_order(q)[:2])
        seen = set()
        for seed in (0, 1, 2):
            parts = Counter()
            for s, k in mc.decompose(big, seed):
                parts[q.index_of(s)] += k
            seen.add(tuple(sorted(parts.items())))
        ok &= seen == {tuple(sorted(expected.items()))}
    runner = CliRunner()
    for cat in ("mod", "H", "A", "As"):
        runs = [runner.invoke(cli.main, ["--no-cache", "ar", os.path.join(ALGDIR, "f2_x3.json"),
                                         "--category", cat]).output for _ in range(2)]
        ok &= runs[0] == runs[1] and runs[0].startswith("digraph")
    record(13, ok, "decompose over 3 seeds, ar output for 4 categories")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        try:
            t()
        except AssertionError:
            pass
    for k in sorted(RESULTS):
        ok, note = RESULTS[k]
        print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {note}")
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)

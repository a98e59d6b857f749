"""Scratch probe 4: acceptance-scale calibration at N=4000, 10 seeds.
Prints the quantities asserted by acceptance criteria 2,3,4,5,6,7.
"""
import time

import numpy as np

import scmdist as s

N = 4000
SEEDS = range(10)
g_fwd = s.Dag(["X", "Y"], [("X", "Y")])
g_rev = s.Dag(["X", "Y"], [("Y", "X")])
v_unit = {"X": 1.0, "Y": 1.0}

t0 = time.time()
rows = {k: [] for k in ["scmd1", "scmd2", "px1", "py1", "e1", "e2", "plug1", "plug2",
                        "mmd1", "mmd2", "sens1_l01", "sens1_l05", "sens1_l1"]}
for seed in SEEDS:
    d1 = s.sample_m1(3, N, 1000 + seed)
    d2 = s.sample_m1(5, N, 2000 + seed)
    d3 = s.sample_m2(3, N, 3000 + seed)
    cfg = s.EstimatorConfig(kernel=s.KernelConfig(0.1), ridge_lambda=0.5)
    cache = s.GramCache(capacity=16)
    r1 = s.scmd(g_fwd, d1, g_fwd, d2, v_unit, v_unit, cfg, cache)
    rows["scmd1"].append(r1.value)
    rows["px1"].append(s.p_scmd(g_fwd, d1, g_fwd, d2, "X", v_unit, v_unit, cfg, cache).value)
    rows["py1"].append(s.p_scmd(g_fwd, d1, g_fwd, d2, "Y", v_unit, v_unit, cfg, cache).value)
    rows["e1"].append(s.e_scmd(g_fwd, d1, g_fwd, d2, cfg=cfg, cache=cache).value)
    r2 = s.scmd(g_fwd, d1, g_rev, d3, v_unit, v_unit, cfg, cache)
    rows["scmd2"].append(r2.value)
    rows["e2"].append(s.e_scmd(g_fwd, d1, g_rev, d3, cfg=cfg, cache=cache).value)
    del cache

    # plug-in at N=1e4 (cheap)
    D1 = s.sample_m1(3, 10000, 5000 + seed)
    D2 = s.sample_m1(5, 10000, 6000 + seed)
    D3 = s.sample_m2(3, 10000, 7000 + seed)
    rows["plug1"].append(s.plugin_scmd(D1, D2, "same-direction", 1.0, 1.0, 0.1))
    rows["plug2"].append(s.plugin_scmd(D1, D3, "reversed", 1.0, 1.0, 0.1))
    rows["mmd1"].append(s.mmd_vstat(D1, D2, s.KernelConfig(0.1)))
    rows["mmd2"].append(s.mmd_vstat(D1, D3, s.KernelConfig(0.1)))

    # sensitivity at sigma^2 = 1, lambdas
    cache = s.GramCache(capacity=16)
    for lam, key in ((0.1, "sens1_l01"), (0.5, "sens1_l05"), (1.0, "sens1_l1")):
        cfg1 = s.EstimatorConfig(kernel=s.KernelConfig(1.0), ridge_lambda=lam)
        rows[key].append(s.scmd(g_fwd, d1, g_fwd, d2, v_unit, v_unit, cfg1, cache).value)
    del cache
    print(f"seed {seed} done at {time.time()-t0:.0f}s", flush=True)

for k, vals in rows.items():
    print(f"{k}: mean={np.mean(vals):.4f} sd={np.std(vals):.4f}")
print(f"total {time.time()-t0:.0f}s")

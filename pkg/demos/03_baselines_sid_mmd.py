"""Why neither baseline is enough on its own.

Two environments can share their causal graph but differ in mechanisms
(the graph distance is blind), or share their full joint distribution with
a reversed causal direction (the distribution distance is blind).  The
interventional distance reacts to both.
"""

from scmdist import (
    Dag,
    EstimatorConfig,
    KernelConfig,
    mmd_vstat,
    sample_m1,
    sample_m2,
    scmd,
    sid,
)

N = 2000
fwd = Dag(["X", "Y"], [("X", "Y")])
rev = Dag(["X", "Y"], [("Y", "X")])

env = sample_m1(3, N, seed=10)
env_slope = sample_m1(5, N, seed=11)   # same graph, different mechanism
env_rev = sample_m2(3, N, seed=12)     # same joint law, reversed edge

kernel = KernelConfig(0.1)
cfg = EstimatorConfig(kernel=kernel, ridge_lambda=0.5)
v = {"X": 1.0, "Y": 1.0}

rows = [
    ("mechanism change", sid(fwd, fwd), mmd_vstat(env, env_slope, kernel),
     scmd(fwd, env, fwd, env_slope, v, v, cfg).value),
    ("edge reversal", sid(fwd, rev), mmd_vstat(env, env_rev, kernel),
     scmd(fwd, env, rev, env_rev, v, v, cfg).value),
]

print(f"{'scenario':>17} | {'SID':>3} | {'MMD-hat':>8} | {'SCMD-hat':>8}")
for name, s, m, c in rows:
    print(f"{name:>17} | {s:>3} | {m:8.4f} | {c:8.4f}")
print()
print("SID misses the mechanism change; MMD-hat sits at its noise floor for")
print("the edge reversal (identical joints); SCMD-hat reports both.")

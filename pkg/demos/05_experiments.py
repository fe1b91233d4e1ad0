"""Small versions of the seeded experiments; each prints its CSV."""

import sys

from randknot.experiments import (
    ExperimentSpec,
    run_complement_search,
    run_experiment,
    run_not_napex_fraction,
    write_csv,
)

seed = 1

spec = ExperimentSpec("ThresholdSweep", trials=200, seed=seed,
                      params={"c_values": [0.5, 2.0], "n_values": [100, 200], "r": 5})
write_csv(run_experiment(spec), spec, fh=sys.stdout)

spec = ExperimentSpec("TailVsBound", trials=20000, seed=seed, params={"n_values": [20, 30], "p": 0.5})
write_csv(run_experiment(spec), spec, fh=sys.stdout)

spec = ExperimentSpec("IKFractionVsN", model="gilbert:n=10,p=0.5", trials=300, seed=seed,
                      params={"n_values": [8, 10, 12, 14]})
write_csv(run_experiment(spec), spec, fh=sys.stdout)

for k, a in ((9, 0), (11, 1)):
    row = run_not_napex_fraction(k, a, 500, seed)
    print(f"not-{a}-apex at order {k}: {row.estimate:.3f} [{row.ci_low:.3f}, {row.ci_high:.3f}]")

res = run_complement_search(8, "nonplanar")
print(f"order 8: {len(res.findings)} planar/planar-complement pairs, e.g. {res.findings[0].graph6}")

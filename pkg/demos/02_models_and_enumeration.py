"""The four random models, exact unlabelled counts, and |Aut| reweighting."""

from collections import Counter

from randknot import ModelSpec, count_unlabelled, count_unlabelled_by_size, sample, unlabelled_estimate
from randknot.models import samples

print("Gamma_n for n = 1..8:", [count_unlabelled(n) for n in range(1, 9)])
print("Gamma_{4,k}:", [count_unlabelled_by_size(4, k) for k in range(7)])

seed = 7
for spec in (ModelSpec.erdos_renyi(10, 20), ModelSpec.gilbert(10, 0.3), ModelSpec.uniform_labelled(10)):
    sizes = [sample(spec, seed, t).size() for t in range(2000)]
    print(f"{spec}: mean size {sum(sizes) / len(sizes):.2f}")

# Model 3 at n = 4 draws each of the 11 classes equally often
freq = Counter(sample(ModelSpec.uniform_unlabelled(4), seed, t).size() for t in range(11000))
print("unlabelled n=4 size histogram:", dict(sorted(freq.items())))

# labelled draws weighted by |Aut| reproduce the unlabelled probability 3/11
est = unlabelled_estimate(samples(ModelSpec.uniform_labelled(4), seed, 20000), lambda g: g.size() == 3)
print(f"weighted Pr[size = 3] = {est.estimate:.4f} +- {est.stderr:.4f}  (exact {3 / 11:.4f})")

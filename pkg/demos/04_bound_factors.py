"""Scalar bound factors and the Markov-type trace tail bound."""

import numpy as np

import tmlab as tm

shape = tm.TensorShape((2, 2))
rng = np.random.default_rng(23)

print("Kantorovich constants K(m, M, p):")
for m, big, p in ((1, 2, 2), (1, 4, 2), (0.5, 1.0, 3.0), (1, 3, 0.7)):
    print(f"  K({m}, {big}, {p}) = {tm.kantorovich(m, big, p):.6f}")

# Per-level factors for a lifted-generator bound: spectral extremes of
# x^(-1) g(x)^(m-k) fed through K(., ., 2q).
x = tm.HermitianTensor.diag([0.5, 1.0, 2.0, 4.0], shape)
g = tm.ando_hiai_g(tm.power(0.5), 2)
bf = tm.kk_factors(x, g, 2, 2.0, 1)
print(f"\nK_k factors on diag(0.5,1,2,4), q=2: {tuple(round(k, 4) for k in bf.kk_list)}")
print(f"product = {bf.kk_product:.6f}")

# Dyadic exponent decomposition q = 2^n q0 with q0 in [1, 2].
for q in (1.5, 3.0, 8.0, 10.0):
    n, q0 = tm.dyadic_decompose(q)
    print(f"q = {q}: n = {n}, q0 = {q0}")


def rand_pd():
    a = (rng.normal(size=(8, 4)) + 1j * rng.normal(size=(8, 4))) / np.sqrt(2)
    return tm.fold(a.conj().T @ a / 8 + 1e-6 * np.eye(4), shape)


# Spectral-ratio factors collapse to 1 for power generators and measure
# the deviation from power behavior otherwise.
xp, yp = rand_pd(), rand_pd()
print("\ndyadic spectral-ratio factors at q = 3:")
for fid in ("power:0.5", "harmonic_like"):
    lo, up = tm.psi_factors(3.0, tm.from_id(fid), xp, yp)
    print(f"  {fid:14s} lower = {lo:.8f}  upper = {up:.8f}")

# Trace tail bound: Pr(y not<= c) <= Tr(mean(z^q) c^(-1)) along a chain
# x <= y <= z built from PSD increments.
ident = tm.HermitianTensor.identity(shape)
samples_y, samples_z = [], []
hits = 0
n = 2000
for _ in range(n):
    xs = rand_pd()
    ys = xs + 0.3 * rand_pd()
    zs = ys + 0.3 * rand_pd()
    samples_y.append(ys)
    samples_z.append(zs)
    if not tm.loewner_compare(ys, 2.0 * ident).is_leq:
        hits += 1
bound, se = tm.trace_tail_bound(samples_z, 1.0, 2.0 * ident)
print(f"\nPr(y not<= 2I) empirical = {hits / n:.4f}  trace bound = {bound:.4f} (+- {se:.4f})")

# Ky Fan partial sums and products back the majorization statements.
h = tm.HermitianTensor.diag([3.0, 2.0, 1.0, 0.5], shape)
for k in range(1, 5):
    s, p = tm.kyfan_stats(h, k)
    print(f"k = {k}: top-k sum = {s:5.2f}  product = {p:6.2f}")

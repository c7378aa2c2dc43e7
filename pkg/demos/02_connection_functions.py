"""Connection functions: the scalar generators behind every tensor mean.

Each generator is a positive function on (0, inf) carrying class tags
(monotone increasing / decreasing / convex), a normalization flag, and
analytic values at 1 and 0+ where known.
"""

import tmlab as tm

print("builtins:")
for fid in ("geometric", "square", "harmonic_like", "power:0.25", "psi:1.0"):
    f = tm.from_id(fid)
    print(f"  {f.label:14s} f(4) = {f(4.0):8.4f}  tags = {sorted(f.tags)}  f(0+) = {f.value_at_0plus}")

# Lifting multiplies by a power of x; transposing swaps the mean's slots.
f = tm.geometric()
lifted = tm.power_lift(f, 2)
print(f"\nlift x^2 * sqrt(x): {lifted.label}(4) = {lifted(4.0)} (= 16 * 2)")
t = tm.transpose_fn(tm.power(2.0))
print(f"transpose of x^2 is x * (1/x)^2 = 1/x: value at 2 = {t(2.0)}")

# Numeric inversion powers the auxiliary map used by the lifted-exponent
# mean bounds: with F(x) = x^(m-1) f(x), the map is 1 / F_inv(1/x).
g = tm.ando_hiai_g(f, 2)
print(f"\nauxiliary map for sqrt generator at m=2 is x^(2/3): g(8) = {g(8.0):.12f}")
print(f"numeric inversion: solve x^1.5 = 8 -> {tm.invert_fn(tm.power_lift(f, 1), 8.0):.12f}")

# Derivative at 1 drives the product-formula limit weights.
for fid in ("geometric", "power:0.3", "harmonic_like", "transpose:power:0.3"):
    fn = tm.from_id(fid)
    print(f"derivative at 1 of {fn.label}: {tm.derivative_at_one(fn):.6f}")

# Power-scaling certificates estimate the constant in f(x^q) <= M f(x)^q.
print("\npower-scaling certificates (grid estimates):")
for fid in ("power:0.5", "harmonic_like"):
    fn = tm.from_id(fid)
    cert = tm.check_pmi(fn)
    print(f"  {fn.label:14s} holds={cert.holds}  M1 = {cert.m1_estimate:.6f}")

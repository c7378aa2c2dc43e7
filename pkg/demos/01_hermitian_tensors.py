"""Tour of the even-order Hermitian tensor algebra.

A Hermitian tensor of shape (2, 2) carries indices (i1, i2, j1, j2) and is
isomorphic to a 4 x 4 Hermitian matrix through the square unfolding; the
Einstein product becomes matrix multiplication there.
"""

import numpy as np

import tmlab as tm

shape = tm.TensorShape((2, 2))
print(f"shape {shape.dims}: order N = {shape.order}, unfolding side D = {shape.square_dim}")

rng = np.random.default_rng(7)
a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
h = tm.fold(a + a.conj().T, shape)
print("\nrandom Hermitian tensor, eigenvalues (descending):")
print(" ", np.round(h.eigenvalues(), 4))

# The Einstein product of two Hermitian tensors need not be Hermitian;
# einstein_product therefore returns raw entries.
g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
k = tm.fold(g + g.conj().T, shape)
prod = tm.einstein_product(h, k)
print("\nEinstein product = matrix product under the unfolding:",
      np.allclose(prod.reshape(4, 4), tm.unfold(h) @ tm.unfold(k)))

# Spectral calculus: apply a scalar function to the spectrum.
p = tm.fold(tm.unfold(h) @ tm.unfold(h) + np.eye(4), shape)  # PD by construction
root = tm.apply_spectral(p, np.sqrt)
print("sqrt(P) squares back to P:",
      np.allclose(tm.unfold(root) @ tm.unfold(root), tm.unfold(p)))

print("\ngauge norms of the random tensor:")
for kind in (tm.SPECTRAL, tm.FROBENIUS, tm.TRACE, tm.ky_fan(2)):
    print(f"  {str(kind):10s} {tm.gauge_norm(h, kind):.6f}")

# Loewner comparison classifies the order of two Hermitian tensors.
x = tm.HermitianTensor.diag([1.0, 2.0, 3.0, 4.0], shape)
y = x + 0.5 * tm.HermitianTensor.identity(shape)
print("\nLoewner comparisons:")
print("  x vs x + I/2:", tm.loewner_compare(x, y).relation.value)
print("  x vs x:      ", tm.loewner_compare(x, x).relation.value)
z = tm.HermitianTensor.diag([2.0, 1.0, 5.0, 3.0], shape)
print("  x vs mixed:  ", tm.loewner_compare(x, z).relation.value)

# Serialization round-trips exactly through JSON.
payload = h.to_json_dict()
back = tm.HermitianTensor.from_json_dict(payload)
print("\nJSON round trip bit-exact:", np.array_equal(back.entries, h.entries))

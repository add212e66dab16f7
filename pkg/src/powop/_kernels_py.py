"""Pure-Python fallback for the dense coefficient kernels."""

# below this many coefficient products the packing overhead of Kronecker
# substitution exceeds its gain
KRONECKER_THRESHOLD = 256


def convolve_mod_schoolbook(a, b, modulus):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % modulus for c in out]


def _pack(values, slot_bytes):
    return int.from_bytes(b"".join(v.to_bytes(slot_bytes, "little") for v in values), "little")


def convolve_mod_kronecker(a, b, modulus):
    """Cauchy product via one big-integer multiplication.

    Inputs must already be reduced into ``[0, modulus)``.
    """
    if not a or not b:
        return []
    n = min(len(a), len(b))
    bound = n * (modulus - 1) ** 2
    slot_bytes = (bound.bit_length() + 8) // 8
    prod = _pack(a, slot_bytes) * _pack(b, slot_bytes)
    size = len(a) + len(b) - 1
    raw = prod.to_bytes(size * slot_bytes, "little")
    return [
        int.from_bytes(raw[k * slot_bytes:(k + 1) * slot_bytes], "little") % modulus
        for k in range(size)
    ]


def convolve_mod(a, b, modulus):
    """Return the coefficient list of ``a * b`` reduced mod ``modulus``."""
    if len(a) * len(b) < KRONECKER_THRESHOLD:
        return convolve_mod_schoolbook(a, b, modulus)
    return convolve_mod_kronecker(a, b, modulus)


def axpy_mod(acc, scalar, x, offset, modulus):
    """In-place ``acc[offset + i] += scalar * x[i]`` followed by reduction."""
    for i, v in enumerate(x):
        acc[offset + i] = (acc[offset + i] + scalar * v) % modulus
    return acc

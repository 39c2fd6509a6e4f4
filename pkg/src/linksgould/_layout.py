"""Bit layout of packed monomial keys, shared by the ring and the kernels.

key = ((eQ + Q_BIAS) << Q_SHIFT) | ((ep + P_BIAS) << SMASK_BITS) | smask
"""

NROOTS = 4
SMASK_BITS = 4
P_BITS = 16
P_BIAS = 1 << (P_BITS - 1)
Q_BIAS = 1 << 30
Q_SHIFT = SMASK_BITS + P_BITS
SMASK_MASK = (1 << SMASK_BITS) - 1
P_MASK = (1 << P_BITS) - 1
# key(a) + key(b) - KEY_BIAS packs the exponent sum; root bits are combined apart
KEY_BIAS = (Q_BIAS << Q_SHIFT) | (P_BIAS << SMASK_BITS)
ONE_KEY = KEY_BIAS

"""Multiprime RSA-like public-key scheme on the Pell hyperbola.

Messages are pairs of residues on x^2 - D y^2 = 1 mod N; exponentiation
runs in the compressed parameter group (Redei rational functions) and
decryption reduces the private exponent per prime power before CRT
recombination, which is what makes it fast.  The package also ships the
matching cryptanalysis (factoring N from the group's totient analog) and a
benchmark against a two-prime CRT-RSA baseline.
"""

from .arith import FactoredModulus, crt_combine, gen_prime, jacobi, mod_inv, mod_pow
from .attacks import (
    AttackReport,
    find_factor,
    full_factorization,
    impossible_op_probability,
    monte_carlo_impossible_rate,
)
from .bench import BenchConfig, BenchResult, emit_report, rsa_baseline, run_benchmark
from .errors import (
    BadExponentChoice,
    ConfigInfeasible,
    DecryptionFailure,
    ImpossibleOperation,
    KeyFormatError,
    MessageNotEncryptable,
    ModulusTooLarge,
    NonCoprimeModuli,
    NotInvertible,
    PellRsaError,
    RandomnessExhausted,
    TrialBudgetExhausted,
)
from .keyfmt import (
    dump_ciphertext,
    dump_private_key,
    dump_public_key,
    load_ciphertext,
    load_private_key,
    load_public_key,
)
from .pell import (
    INFINITY,
    HyperbolaPoint,
    OpCount,
    PellParams,
    RedeiPair,
    enumerate_hyperbola,
    param_mul,
    param_pow,
    param_to_point,
    point_mul,
    point_pow,
    point_to_param,
    psi,
    redei_eval,
    redei_pow,
)
from .scheme import (
    Ciphertext,
    MessagePair,
    Mode,
    PointCiphertext,
    PrivateKey,
    PublicKey,
    decrypt,
    decrypt_point,
    encrypt,
    encrypt_point,
    keygen,
    keypair_from_primes,
    random_message,
    reduced_private_exponents,
    validate_message,
)

__version__ = "0.1.0"

from .functions import divisors, factorize, is_squarefree, kronecker, mobius
from .sieve import PrimeSieve, sieve

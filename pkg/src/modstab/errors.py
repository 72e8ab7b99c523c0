"""Exception types shared across the package."""


class ModstabError(Exception):
    """Base class for all library errors."""


class NotAUnit(ModstabError):
    """A residue with gcd(a, d) > 1 has no multiplicative inverse."""


class BothZero(ModstabError):
    """gcd(0, 0) has no Bezout certificate."""


class ModuliNotCoprime(ModstabError):
    """CRT recombination needs pairwise coprime moduli."""


class ShapeMismatch(ModstabError):
    """Operands have incompatible dimensions."""


class ModulusMismatch(ModstabError):
    """Operands live over different rings Z_d."""


class NoSolution(ModstabError):
    """The linear system is inconsistent over Z_d."""


class NotInvertible(ModstabError):
    """det(A) shares a factor with d."""


class NotIndependent(ModstabError):
    """Columns are linearly dependent over Z_d."""


class NotIsotropic(ModstabError):
    """Some pair of columns has a nonzero symplectic product."""


class NotSymplectic(ModstabError):
    """M^T L M != L."""


class NotInSubgroup(ModstabError):
    """Matrix is not in the check-matrix stabilizer subgroup."""


class DimensionMismatch(ModstabError):
    """Pauli labels over different n or d cannot be combined."""


class InvalidParams(ModstabError):
    """Parameters outside the valid range (e.g. k >= n or d < 2)."""


class BudgetExceeded(ModstabError):
    """Brute-force search space exceeds the enumeration budget."""

"""2-ranks of incidence matrices of finite quadratic spaces over PG(n, q)."""

__version__ = "0.1.0"

from .field import FieldElement, FiniteField, field_of_order, make_field  # noqa: E402
from .gf2 import BitMatrix, multiply, power, rank, rank_oracle  # noqa: E402
from .incidence import BlockDecomposition, full_matrix, line_profile  # noqa: E402
from .quadratic import PointClass, QuadraticSpace, make_space  # noqa: E402

__all__ = [
    "BitMatrix",
    "BlockDecomposition",
    "FieldElement",
    "FiniteField",
    "PointClass",
    "QuadraticSpace",
    "field_of_order",
    "full_matrix",
    "line_profile",
    "make_field",
    "make_space",
    "multiply",
    "power",
    "rank",
    "rank_oracle",
]

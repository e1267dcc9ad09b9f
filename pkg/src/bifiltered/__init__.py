from .exactlin import GF, QQ, Matrix, Subspace

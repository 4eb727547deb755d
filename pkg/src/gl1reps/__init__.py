"""Exact highest weight modules of gl(1|N) and gl(1|inf) in GZ and C bases."""
from __future__ import annotations

from .c_rep import (
    CModule,
    c_act,
    c_act_cartan,
    c_act_chevalley_infinite,
    c_act_finite,
    c_hwv_flag_conditions,
    signature_c_to_gz,
    signature_gz_to_c,
)
from .errors import Gl1RepsError
from .gz_rep import GzModule, gz_act, gz_matrix
from .isomap import g, g_inv, phi, phi_inv, table_c_to_gz, table_gz_to_c
from .reflections import chain_signature, odd_reflection, reflect
from .scalar import RadicalScalar
from .tables import (
    CSignature,
    CTable,
    GzSignature,
    GzTable,
    InfiniteCSignature,
    InfiniteCTable,
    InfiniteGzSignature,
    InfiniteGzTable,
    c_highest_table,
    c_validate,
    gz_enumerate,
    gz_highest_table,
    gz_validate,
)
from .vector import E, GeneratorId, SparseMatrix, SparseVector, e

__all__ = [
    "CModule", "CSignature", "CTable", "E", "GeneratorId", "Gl1RepsError", "GzModule",
    "GzSignature", "GzTable", "InfiniteCSignature", "InfiniteCTable", "InfiniteGzSignature",
    "InfiniteGzTable", "RadicalScalar", "SparseMatrix", "SparseVector", "c_act", "c_act_cartan",
    "c_act_chevalley_infinite", "c_act_finite", "c_highest_table", "c_hwv_flag_conditions",
    "c_validate", "chain_signature", "e", "g", "g_inv", "gz_act", "gz_enumerate",
    "gz_highest_table", "gz_matrix", "gz_validate", "odd_reflection", "phi", "phi_inv",
    "reflect", "signature_c_to_gz", "signature_gz_to_c", "table_c_to_gz", "table_gz_to_c",
]

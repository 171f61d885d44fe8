"""Exact verification of inequalities between term-normalized symmetric functions."""
from .errors import DegenerateInputError, DivisibilityError, DomainError
from .exactpoly import MultiPoly, Rational, UniPoly, exact_div
from .partition import Partition, conjugate, enumerate_partitions, family_witness, majorizes
from .positivity import (
    Status,
    SturmChain,
    Verdict,
    coeff_nonneg,
    count_roots,
    ds_nonneg_on_simplex,
    nonneg_on_ray,
    sample_search,
    sturm_chain,
)
from .symfun import (
    SymFamily,
    expected_degree,
    generate,
    h_single,
    norm_const,
    normalized_diff,
    two_block,
    two_block_diff,
    two_block_symbolic_H,
)

__version__ = "0.1.0"

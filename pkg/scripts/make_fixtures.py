#!/usr/bin/env python3
"""Regenerate the committed golden fixtures under tests/fixtures/.

The fixture bytes are part of the format-stability contract: the test suite
asserts that freshly generated instances serialize to exactly these bytes,
so regenerate only on a deliberate format or generator change.
"""

import pathlib
import numpy as np

from specfact.fileio import write_factor, write_spectrum
from specfact.laurent import HermitianLaurentPolynomial, MatrixPolynomial
from specfact.testgen import generate_boundary_instance, generate_instance

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)

    # Hand-checkable scalar pair: 5 + 2z + 2/z factors as 2 + z.
    spectrum = HermitianLaurentPolynomial(np.array([5.0, 2.0], complex).reshape(2, 1, 1))
    truth = MatrixPolynomial(np.array([2.0, 1.0], complex).reshape(2, 1, 1))
    write_spectrum(FIXTURES / "scalar_basic.spectrum", spectrum)
    write_factor(FIXTURES / "scalar_basic.truth", truth,
                 algorithm="ground_truth", residual=0.0)

    bundle = generate_instance(2, 3, seed=11, root_margin=0.2)
    write_spectrum(FIXTURES / "bundle_r2m3_seed11.spectrum", bundle.spectrum)
    write_factor(FIXTURES / "bundle_r2m3_seed11.truth", bundle.ground_truth,
                 algorithm="ground_truth", residual=0.0)

    boundary = generate_boundary_instance(2, 2, seed=19)
    write_spectrum(FIXTURES / "boundary_r2m2_seed19.spectrum", boundary.spectrum)
    write_factor(FIXTURES / "boundary_r2m2_seed19.truth", boundary.ground_truth,
                 algorithm="ground_truth", residual=0.0,
                 warnings=["boundary-degenerate instance"])

    print(f"fixtures written to {FIXTURES}")


if __name__ == "__main__":
    main()

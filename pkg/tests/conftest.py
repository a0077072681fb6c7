import pytest

import gapforge as gf


@pytest.fixture(scope="session")
def code_suite():
    """Fixed suite used by the collision-bound and threshold-property suites.

    5 Reed-Solomon codes, 6 seeded random codes (q=4, r=2, ell=8), and 2
    codes derived from verified perfect hash families: 13 codes total.
    """
    suite = [
        gf.reed_solomon(2, 1),
        gf.reed_solomon(2, 2),
        gf.reed_solomon(3, 1),
        gf.reed_solomon(3, 2),
        gf.reed_solomon(5, 2),
    ]
    for seed in range(6):
        suite.append(gf.random_code(4, 2, 8, seed))
    suite.append(gf.phf_to_code(gf.find_phf(8, 2, 16, seed=0)))
    suite.append(gf.phf_to_code(gf.find_phf(9, 3, 32, seed=1)))
    return suite

import random

from hypothesis import HealthCheck, settings

from qcanon.laurent import LaurentPoly
from qcanon.qmatrix import AlgebraElement, ExpMatrix

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def random_poly(rng: random.Random, span: int = 4, terms: int = 3) -> LaurentPoly:
    return LaurentPoly(
        {rng.randint(-span, span): rng.randint(-4, 4) for _ in range(terms)}
    )


def random_matrix(rng: random.Random, n: int, total: int) -> ExpMatrix:
    rows = [[0] * n for _ in range(n)]
    for _ in range(total):
        rows[rng.randrange(n)][rng.randrange(n)] += 1
    return ExpMatrix(rows)


def random_element(rng: random.Random, n: int, terms: int = 3, total: int = 2) -> AlgebraElement:
    out = AlgebraElement.zero(n)
    for _ in range(terms):
        A = random_matrix(rng, n, rng.randint(0, total))
        out = out + AlgebraElement.monomial(A).scale(random_poly(rng, span=2, terms=2))
    return out

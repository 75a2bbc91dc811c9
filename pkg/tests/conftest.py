import numpy as np
import pytest

from repsample import load_csv

# per-(type, band) counts of the nine-stratum composition fixture
TABLE1_COUNTS = {
    "dataset": (101_667, 13, 1),
    "model": (456_149, 143, 11),
    "space": (116_804, 38, 1),
}
TABLE1_SEED = 20240417


def make_table1_csv(path, seed: int = TABLE1_SEED) -> None:
    """Synthetic likes/type population whose k=3 clusters and categories
    reproduce the nine-stratum composition sizes exactly.

    The numeric values sit in three well-separated bands so the banded
    clustering is both a Lloyd fixed point and the global optimum.
    """
    rng = np.random.default_rng(seed)
    likes_parts, type_parts = [], []
    for type_name, (n_low, n_mid, n_high) in TABLE1_COUNTS.items():
        low = np.minimum(np.round(rng.exponential(30.0, n_low)), 437.0)
        mid = rng.integers(2000, 2598, n_mid).astype(float)
        high = rng.integers(8000, 9910, n_high).astype(float)
        vals = np.concatenate([low, mid, high])
        likes_parts.append(vals)
        type_parts.extend([type_name] * vals.size)
    likes = np.concatenate(likes_parts)
    types = np.array(type_parts)
    perm = rng.permutation(likes.size)
    likes, types = likes[perm], types[perm]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("likes,type\n")
        fh.writelines(f"{int(v)},{t}\n" for v, t in zip(likes, types))


@pytest.fixture(scope="session")
def table1_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("table1") / "population.csv"
    make_table1_csv(path)
    return path


@pytest.fixture(scope="session")
def table1_dataset(table1_csv):
    return load_csv(table1_csv)


@pytest.fixture
def small_csv(tmp_path):
    path = tmp_path / "small.csv"
    path.write_text(
        "likes,type,note\n"
        "3,model,first\n"
        ",dataset,second\n"
        "7,model,\n"
        "1,space,fourth\n"
        "0,model,fifth\n",
        encoding="utf-8",
    )
    return path

from pathlib import Path

import numpy as np
import pytest

from rkin.model import LinkRecord, build_model

FIXTURES = Path(__file__).parent / "fixtures"

EX = np.array([1.0, 0.0, 0.0])
EY = np.array([0.0, 1.0, 0.0])
EZ = np.array([0.0, 0.0, 1.0])


@pytest.fixture
def three_link_path() -> Path:
    return FIXTURES / "threelink.rkin"


@pytest.fixture
def humanoid_path() -> Path:
    return FIXTURES / "humanoid.rkin"


@pytest.fixture
def two_link_model():
    """Planar arm: base, joint a at height l1, joint b a further l2 up, both
    rotating about x. The end point sits at (0,0,l3) in b's frame."""
    return build_model([
        LinkRecord(self_id=0, name="base", parent_id=None, joint_axis=EX, offset=np.zeros(3)),
        LinkRecord(self_id=1, name="a", parent_id=0, joint_axis=EX, offset=EZ.copy()),
        LinkRecord(self_id=2, name="b", parent_id=1, joint_axis=EX, offset=EZ.copy()),
    ])


@pytest.fixture
def three_link_model():
    return build_model([
        LinkRecord(self_id=0, name="base", parent_id=None, joint_axis=EX, offset=np.zeros(3)),
        LinkRecord(self_id=1, name="upper", parent_id=0, joint_axis=EX, offset=EZ.copy()),
        LinkRecord(self_id=2, name="fore", parent_id=1, joint_axis=EX, offset=EZ.copy()),
        LinkRecord(self_id=3, name="hand", parent_id=2, joint_axis=EX, offset=EZ.copy()),
    ])


def random_unit(rng) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_rotation(rng) -> np.ndarray:
    from rkin.rotation import exp_so3
    return exp_so3(random_unit(rng), rng.uniform(-np.pi, np.pi))


def random_tree_records(rng, n_links: int, contiguous_ids: bool = True) -> list[LinkRecord]:
    """Random valid link records. Ids ascend in declaration order (the
    canonical ordering) but need not be contiguous."""
    if contiguous_ids:
        ids = list(range(n_links))
    else:
        ids = sorted(rng.choice(10 * n_links, size=n_links, replace=False).tolist())
    records = []
    for pos, link_id in enumerate(ids):
        parent = None if pos == 0 else ids[int(rng.integers(0, pos))]
        if rng.random() < 0.5:
            axis = [EX, EY, EZ][int(rng.integers(0, 3))].copy()
        else:
            axis = random_unit(rng)
        kwargs = {}
        if rng.random() < 0.3:
            kwargs["mass"] = float(rng.uniform(0.1, 5.0))
        if rng.random() < 0.3:
            kwargs["com"] = rng.uniform(-0.5, 0.5, size=3)
        if rng.random() < 0.3:
            a = rng.uniform(-1.0, 1.0, size=(3, 3))
            kwargs["inertia"] = (a + a.T) / 2.0
        records.append(LinkRecord(self_id=int(link_id), name=f"link{link_id}",
                                  parent_id=parent, joint_axis=axis,
                                  offset=rng.uniform(-1.0, 1.0, size=3), **kwargs))
    return records


def random_tree_model(rng, n_links: int):
    return build_model(random_tree_records(rng, n_links))

import pathlib

import pytest


@pytest.fixture(scope="session")
def wbcd_csv(tmp_path_factory):
    """Breast-cancer diagnostic table written in the raw wdbc.data layout.

    Column 0 is a fake case id, column 1 the M/B label, then the 30
    real-valued features.  No header row.  Values come from sklearn's
    bundled copy of the same dataset.
    """
    sklearn = pytest.importorskip("sklearn.datasets")
    data = sklearn.load_breast_cancer()
    path = tmp_path_factory.mktemp("wbcd") / "wdbc.csv"
    lines = []
    for i in range(data.data.shape[0]):
        diag = "B" if data.target[i] == 1 else "M"
        cells = [str(842301 + i), diag] + [repr(float(v)) for v in data.data[i]]
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n")
    return str(path)


@pytest.fixture()
def tiny_csv(tmp_path):
    """4x2 numeric table with a header and a binary label column."""
    path = tmp_path / "tiny.csv"
    path.write_text(
        "a,b,label\n"
        "1.0,2.0,1\n"
        "3.0,4.0,-1\n"
        "5.0,6.0,1\n"
        "7.0,8.0,-1\n"
    )
    return str(path)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running statistical checks")


REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent

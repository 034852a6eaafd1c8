import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fcssc.dataset import (EmptyColumnError, EmptyTableError, FuzzyDecisionSystem,
                           MissingLabelColumnError, RaggedRowsError, RawTable,
                           UnreadableFileError, bundled_path, class_partition,
                           impute_missing, load_bundled, load_csv, min_max_scale,
                           normalize_min_max)


def write(tmp_path, text, name="d.csv"):
    p = tmp_path / name
    p.write_text(text)
    return p


def parts(groups):
    return [g.tolist() for g in groups]


class TestLoadCsv:
    def test_header_label_last(self, tmp_path):
        t = load_csv(write(tmp_path, "a,b,y\n1,2,x\n3,4,y\n5,6,x\n"), "y")
        assert t.n_rows == 3
        assert t.label_column == 2
        assert t.column_names == ("a", "b", "y")
        assert t.rows[0] == (1.0, 2.0, "x")

    def test_empty_cell_is_missing(self, tmp_path):
        t = load_csv(write(tmp_path, "a,b,y\n1,,x\n3,4,y\n"), "y")
        assert t.rows[0][1] is None
        assert t.has_missing()

    def test_ragged(self, tmp_path):
        with pytest.raises(RaggedRowsError):
            load_csv(write(tmp_path, "a,b,y\n1,2,x\n3,4\n"), "y")

    def test_missing_label_column(self, tmp_path):
        with pytest.raises(MissingLabelColumnError):
            load_csv(write(tmp_path, "a,b,y\n1,2,x\n"), "label")
        with pytest.raises(MissingLabelColumnError):
            load_csv(write(tmp_path, "a,b,y\n1,2,x\n"), 7)

    def test_unreadable(self, tmp_path):
        with pytest.raises(UnreadableFileError):
            load_csv(tmp_path / "nope.csv")

    def test_no_header_index(self, tmp_path):
        t = load_csv(write(tmp_path, "x,1,2\ny,3,4\n"), 0, has_header=False)
        assert t.label_column == 0
        assert t.column_names == ("x0", "x1", "x2")
        assert t.n_rows == 2

    def test_error_codes_distinct(self):
        codes = {e.code for e in (UnreadableFileError, RaggedRowsError, MissingLabelColumnError)}
        assert len(codes) == 3


def table(cols, label):
    rows = tuple(zip(*(cols + [label])))
    names = tuple(f"c{j}" for j in range(len(cols))) + ("y",)
    return RawTable(rows, names, len(cols))


class TestImpute:
    def test_unique_mode(self):
        t = impute_missing(table([[1.0, 1.0, 2.0, None]], ["a"] * 4))
        assert t.column(0) == [1.0, 1.0, 2.0, 1.0]

    def test_numeric_tie_smallest(self):
        t = impute_missing(table([[2.0, 1.0, None]], ["a"] * 3))
        assert t.column(0) == [2.0, 1.0, 1.0]

    def test_categorical_mode(self):
        t = impute_missing(table([["r", "g", "g", None]], ["a"] * 4))
        assert t.column(0)[-1] == "g"

    def test_unchanged_without_missing(self):
        t = table([[1.0, 2.0]], ["a", "b"])
        assert impute_missing(t) is t

    def test_all_missing_column(self):
        with pytest.raises(EmptyColumnError):
            impute_missing(table([[None, None]], ["a", "b"]))

    @given(st.lists(st.one_of(st.none(), st.integers(0, 5).map(float)), min_size=1, max_size=30)
           .filter(lambda c: any(v is not None for v in c)))
    def test_never_touches_present_cells(self, col):
        out = impute_missing(table([col], ["a"] * len(col))).column(0)
        assert all(o == v for o, v in zip(out, col) if v is not None)
        assert None not in out


class TestNormalize:
    def test_affine(self):
        fds = normalize_min_max(table([[2.0, 4.0, 6.0]], ["a", "b", "a"]))
        np.testing.assert_allclose(fds.samples[:, 0], [0, 0.5, 1])

    def test_constant_column(self):
        fds = normalize_min_max(table([[5.0, 5.0, 5.0]], ["a", "b", "a"]))
        np.testing.assert_array_equal(fds.samples[:, 0], [0, 0, 0])

    def test_partition_by_label(self):
        fds = normalize_min_max(table([[1.0, 2.0, 3.0]], ["a", "b", "a"]))
        assert parts(fds.classes) == [[0, 2], [1]]
        assert fds.class_names == ("a", "b")

    def test_categorical_coded_then_scaled(self):
        fds = normalize_min_max(table([["lo", "hi", "mid", "hi"]], [0.0, 1.0, 0.0, 1.0]))
        np.testing.assert_allclose(fds.samples[:, 0], [0, 0.5, 1, 0.5])
        assert fds.class_names == ("0", "1")

    def test_zero_rows(self):
        with pytest.raises(EmptyTableError):
            normalize_min_max(RawTable((), ("a", "y"), 1))

    def test_idempotent_on_normalized(self, rng):
        X = rng.random((20, 4))
        X[0], X[1] = 0.0, 1.0
        np.testing.assert_allclose(min_max_scale(min_max_scale(X)), min_max_scale(X), atol=1e-12)
        np.testing.assert_allclose(min_max_scale(X), X, atol=1e-12)

    @given(st.integers(1, 30), st.integers(1, 6), st.integers(1, 4), st.integers(0, 2**32 - 1))
    def test_random_tables_well_formed(self, n, m, c, seed):
        r = np.random.default_rng(seed)
        cols = [list(r.normal(0, 10, n)) for _ in range(m)]
        labels = [f"k{v}" for v in r.integers(0, c, n)]
        fds = normalize_min_max(table(cols, labels))
        assert fds.samples.min() >= 0 and fds.samples.max() <= 1
        flat = np.sort(np.concatenate(fds.classes))
        np.testing.assert_array_equal(flat, np.arange(n))


class TestClassPartition:
    @pytest.mark.parametrize("labels, expected", [
        ([0, 0, 1], [[0, 1], [2]]),
        (["x"], [[0]]),
        ([2, 1, 2, 1], [[0, 2], [1, 3]]),
    ])
    def test_examples(self, labels, expected):
        assert parts(class_partition(labels)) == expected


def test_fds_rejects_out_of_range():
    with pytest.raises(ValueError):
        FuzzyDecisionSystem(np.array([[1.5]]), [0])


def test_fds_is_read_only():
    fds = FuzzyDecisionSystem(np.array([[0.5], [0.2]]), [0, 1])
    with pytest.raises(ValueError):
        fds.samples[0, 0] = 0.1


def test_restrict_keeps_class_ids():
    fds = FuzzyDecisionSystem(np.array([[0.1], [0.2], [0.3]]), [0, 1, 2])
    sub = fds.restrict([1, 2])
    assert sub.labels.tolist() == [1, 2]
    assert parts(sub.classes) == [[0], [1]]


def test_bundled_wine():
    fds = load_bundled("wine")
    assert fds.samples.shape == (178, 13)
    assert fds.n_classes == 3
    assert bundled_path("separable").is_file()

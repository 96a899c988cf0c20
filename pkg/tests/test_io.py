"""File formats: instance/benefit JSON, layout CSV."""

import numpy as np
import pytest

from cransched import (
    BenefitTensor,
    Dimensions,
    SimParams,
    generate_instance,
    generate_layout,
    load_benefits,
    load_bs_positions,
    load_instance,
    save_benefits,
    save_instance,
    save_layout,
    sum_rate_benefits,
)
from cransched.instance_io import LAYOUT_HEADER, layout_to_csv
from conftest import random_benefits


@pytest.fixture
def inst():
    return generate_instance(Dimensions(4, 3, 2), SimParams(seed=42))


class TestInstanceFiles:
    def test_roundtrip(self, tmp_path, inst):
        path = tmp_path / "inst.json"
        save_instance(path, inst)
        back = load_instance(path)
        assert back.dims == inst.dims
        assert np.array_equal(back.power, inst.power)
        assert np.array_equal(back.gain_sq, inst.gain_sq)
        assert back.noise_w == inst.noise_w
        assert back.sinr_gap == inst.sinr_gap

    def test_file_bytes_stable(self, tmp_path, inst):
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        save_instance(p1, inst)
        save_instance(p2, inst)
        assert p1.read_bytes() == p2.read_bytes()
        assert p1.read_bytes().endswith(b"\n")

    def test_corrupt_json_reports_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{\n  "dims": {\n')
        with pytest.raises(ValueError, match=r"broken\.json:\d+:\d+"):
            load_instance(path)

    def test_missing_key_reported(self, tmp_path, inst):
        path = tmp_path / "inst.json"
        save_instance(path, inst)
        text = path.read_text().replace('"noise_w"', '"noise_x"')
        path.write_text(text)
        with pytest.raises(ValueError, match="noise_w"):
            load_instance(path)


class TestBenefitFiles:
    def test_roundtrip(self, tmp_path, rng):
        dims = Dimensions(3, 2, 2)
        bens = random_benefits(dims, rng)
        path = tmp_path / "bens.json"
        save_benefits(path, bens)
        back = load_benefits(path)
        assert back.dims == dims
        assert np.array_equal(back.a, bens.a)

    def test_dims_cross_check(self, tmp_path, rng):
        dims = Dimensions(3, 2, 2)
        save_benefits(tmp_path / "bens.json", random_benefits(dims, rng))
        with pytest.raises(ValueError):
            load_benefits(tmp_path / "bens.json", dims=Dimensions(3, 2, 3))

    def test_derived_benefits_roundtrip_exactly(self, tmp_path, inst):
        bens = sum_rate_benefits(inst)
        save_benefits(tmp_path / "b.json", bens)
        assert np.array_equal(load_benefits(tmp_path / "b.json").a, bens.a)


class TestLayoutFiles:
    def test_csv_shape(self):
        layout = generate_layout(Dimensions(4, 3, 1), SimParams(seed=1))
        text = layout_to_csv(layout)
        lines = text.strip().splitlines()
        assert lines[0] == LAYOUT_HEADER
        assert len(lines) == 1 + 3 + 4
        types = [l.split(",")[1] for l in lines[1:]]
        assert types == ["bs"] * 3 + ["user"] * 4

    def test_bs_positions_roundtrip(self, tmp_path):
        layout = generate_layout(Dimensions(4, 3, 1), SimParams(seed=1))
        path = tmp_path / "layout.csv"
        save_layout(path, layout)
        pos = load_bs_positions(path)
        assert np.array_equal(pos, layout.bs_positions)

    def test_missing_column_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("entity,type,x_m\nbs0,bs,0.0\n")
        with pytest.raises(ValueError):
            load_bs_positions(path)

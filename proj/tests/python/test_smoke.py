# Copyright 2026 The evcf Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import math

import numpy as np
import pytest

import evcf


def texture(n=40, size=24, rate=100.0, flicker=0.0):
    t = np.arange(n) / rate
    yy, xx = np.mgrid[0:size, 0:size]
    frames = np.stack(
        [
            (128 + 80 * np.sin(2 * np.pi * (xx - 20 * ti) / 11.0) * np.cos(2 * np.pi * yy / 9.0))
            * (1 - flicker * 0.5 * (1 - np.cos(2 * np.pi * ti)))
            for ti in t
        ]
    )
    return t, np.clip(np.rint(frames), 0, 255).astype(np.uint8)


def test_log_round_trip():
    img = np.arange(256, dtype=np.uint8).reshape(16, 16)
    logs = evcf.to_log(img)
    assert logs.shape == (16, 16)
    assert logs[0, 0] == pytest.approx(math.log(0.01))
    assert np.array_equal(evcf.from_log(logs), img)


def test_gain_law():
    assert evcf.compute_alpha(-1.0) == pytest.approx(2 * math.pi)
    assert evcf.compute_alpha(math.log(0.01)) == pytest.approx(0.2 * math.pi)
    assert evcf.compute_alpha(5.0) == pytest.approx(0.2 * math.pi)


def test_filter_event_jump_and_decay():
    cfg = evcf.Config(c_on=0.1, c_off=0.2)
    f = evcf.ComplementaryFilter(2, 1, cfg)
    f.process_events(np.array([0.0, 0.0]), np.array([0, 1]), np.array([0, 0]), np.array([1, 0]))
    out = f.query(0.0)
    assert out.shape == (1, 2)
    assert out[0, 0] == pytest.approx(0.1)
    assert out[0, 1] == pytest.approx(-0.2)
    assert f.query(0.25)[0, 0] == pytest.approx(0.1 * math.exp(-math.pi / 2))


def test_simulate_reconstruct_evaluate():
    t, frames = texture()
    sim = evcf.simulate(t, frames, evcf.SimulationConfig())
    et, ex, ey, ep = sim["events"]
    assert len(et) > 0 and np.all(np.diff(et) >= 0)
    assert sim["frames"].shape[1:] == frames.shape[1:]
    assert sim["frames"].min() >= 64 and sim["frames"].max() <= 191

    cfg = evcf.Config(c_on=0.15, c_off=0.15)
    session = evcf.Session(et, ex, ey, ep, sim["frame_times"], sim["frames"], config=cfg)
    recon = session.export_frames(list(t))
    assert recon.shape == frames.shape
    assert session.events_processed == len(et)
    errs = [evcf.photometric_error(a, b) for a, b in zip(frames, recon)]
    assert all(0.0 <= e <= 100.0 for e in errs)
    assert evcf.ssim(frames[0], frames[0]) == 1.0


def test_calibrate_noiseless():
    t, frames = texture(n=200, flicker=0.8)
    sc = evcf.SimulationConfig()
    sc.noise_fraction = 0.0
    et, ex, ey, ep = evcf.simulate(t, frames, sc)["events"]
    r = evcf.calibrate(et, ex, ey, ep, t[::15], frames[::15])
    assert r["c_on"] == pytest.approx(0.15, rel=0.05)
    assert r["c_off"] == pytest.approx(0.15, rel=0.05)


def test_errors_map_to_python_exceptions(tmp_path):
    with pytest.raises(evcf.Error):
        evcf.Config().validate()
    with pytest.raises(evcf.Error):
        evcf.ComplementaryFilter(2, 2, evcf.Config(c_on=0.1, c_off=0.1, mode=evcf.Mode.EVENTS_ONLY)).process_frame(
            0.0, np.zeros((2, 2))
        )
    with pytest.raises(evcf.IoError):
        evcf.read_events(str(tmp_path / "missing.txt"))


def test_file_round_trip(tmp_path):
    t, frames = texture(n=3, size=8)
    evcf.write_frames(str(tmp_path / "index.txt"), t, frames)
    rt, rf = evcf.read_frames(str(tmp_path / "index.txt"))
    assert np.array_equal(rf, frames)
    assert np.allclose(rt, t)
    ev = (np.array([0.25e-3, 0.5]), np.array([1, 2]), np.array([3, 4]), np.array([1, 0]))
    evcf.write_events(str(tmp_path / "e.txt"), *ev)
    back = evcf.read_events(str(tmp_path / "e.txt"))
    for a, b in zip(ev, back):
        assert np.array_equal(a, b)

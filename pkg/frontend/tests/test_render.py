import numpy as np
import pytest

from qlandscape_render.cli import main
from qlandscape_render.io import MapCsv, ScanCsv
from qlandscape_render.render import render_map, render_scan


def synthetic_map(n_alpha=6, n_phi=5):
    alpha = np.linspace(0.0, 5.0, n_alpha)
    phi_w = np.linspace(0.1, 3.1, n_phi)
    j0 = np.cos(np.add.outer(alpha * 0.0, phi_w + 1.0)) ** 2
    p = np.tile(np.linspace(0.1, 0.9, n_phi), (n_alpha, 1))
    return MapCsv(alpha=alpha, phi_w=phi_w, j0=j0, p=p)


def write_map_text(path, data):
    lines = ["alpha,phi_w,j0,p"]
    for i, a in enumerate(data.alpha):
        for j, f in enumerate(data.phi_w):
            lines.append(f"{a:.10g},{f:.10g},{data.j0[i, j]:.10g},{data.p[i, j]:.10g}")
    path.write_text("\n".join(lines) + "\n")
    return str(path)


class TestRenderMap:
    def test_writes_png(self, tmp_path):
        out = tmp_path / "map.png"
        render_map(synthetic_map(), out)
        blob = out.read_bytes()
        assert blob[:8] == b"\x89PNG\r\n\x1a\n"
        assert len(blob) > 5000

    def test_byte_identical_rerender(self, tmp_path):
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        data = synthetic_map()
        render_map(data, a)
        render_map(data, b)
        assert a.read_bytes() == b.read_bytes()

    def test_constant_surface_renders(self, tmp_path):
        data = synthetic_map()
        flat = MapCsv(alpha=data.alpha, phi_w=data.phi_w,
                      j0=data.j0, p=np.full_like(data.p, 0.5))
        render_map(flat, tmp_path / "flat.png")
        assert (tmp_path / "flat.png").exists()


class TestRenderScan:
    def test_writes_png(self, tmp_path):
        data = ScanCsv(alpha=np.linspace(0, 6, 16), p=np.full(16, 0.5))
        out = tmp_path / "scan.png"
        render_scan(data, out)
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_single_point(self, tmp_path):
        render_scan(ScanCsv(alpha=np.array([1.0]), p=np.array([0.4])),
                    tmp_path / "one.png")
        assert (tmp_path / "one.png").exists()

    def test_byte_identical_rerender(self, tmp_path):
        data = ScanCsv(alpha=np.linspace(0, 6, 8), p=np.linspace(0.4, 0.6, 8))
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        render_scan(data, a)
        render_scan(data, b)
        assert a.read_bytes() == b.read_bytes()


class TestCli:
    def test_map_command(self, tmp_path, capsys):
        csv_path = write_map_text(tmp_path / "m.csv", synthetic_map())
        out = tmp_path / "m.png"
        assert main(["map", csv_path, str(out)]) == 0
        assert "6x5 cells" in capsys.readouterr().out
        assert out.exists()

    def test_scan_command(self, tmp_path):
        csv_path = tmp_path / "s.csv"
        csv_path.write_text("alpha,p\n0.1,0.5\n0.2,0.52\n")
        out = tmp_path / "s.png"
        assert main(["scan", str(csv_path), str(out)]) == 0
        assert out.exists()

    def test_missing_file_is_usage_error(self, tmp_path):
        assert main(["map", str(tmp_path / "nope.csv"), str(tmp_path / "x.png")]) == 1

    def test_incomplete_grid_is_input_error(self, tmp_path, capsys):
        csv_path = tmp_path / "m.csv"
        csv_path.write_text("alpha,phi_w,j0,p\n0,0.5,0.8,0.9\n0,1,0.2,0.3\n1,0.5,0.8,0.9\n")
        assert main(["map", str(csv_path), str(tmp_path / "m.png")]) == 2
        assert "missing grid cells" in capsys.readouterr().err

    def test_unknown_command(self):
        assert main(["frobnicate"]) == 1

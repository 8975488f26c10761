"""
Natural Image Audit Script
Sweeps a folder of 512x512 PGM images and reports how the averaged quality
compares with the published zone table. Deviations are reported, never fatal.

Usage: python audit_natural_images.py IMAGE_DIR [--ks 8:448:8]
"""

import argparse
import asyncio
import os
import sys
import time
from pathlib import Path

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))

from cli.sweep import average_sweeps, parse_ks, run_sweep
from image_io.conversion import image_to_matrix
from image_io.pgm import load_image
from metrics.quality import format_db
from metrics.zones import energy_band, summarize_zones

# (k range, lower E bound, upper E bound) of the published zone table
EXPECTED_BANDS = [
    ((8, 32), 0.99, 0.999),
    ((40, 120), 0.999, 0.9999),
    ((128, 448), 0.9999, 1.0)
]
K40_PSNR = (32.0, 38.0)
K40_SSIM = (0.90, 0.98)


class NaturalImageAuditor:
    def __init__(self, directory: Path, ks: str = None):
        self.paths = sorted(directory.glob("*.pgm"))
        self.ks = ks
        self.sweeps = []
        self.deviations = []

    def run(self):
        print("=" * 60)
        print("PER-IMAGE SWEEPS")
        print("=" * 60)
        for path in self.paths:
            image = image_to_matrix(load_image(path))
            if image.shape != (512, 512):
                print(f"[SKIP] {path.name}: {image.shape[0]}x{image.shape[1]}")
                continue
            started = time.perf_counter()
            rows = asyncio.run(run_sweep(image, parse_ks(self.ks, min(image.shape))))
            elapsed = time.perf_counter() - started
            e_min, e_max, spread = energy_band(rows)
            print(f"[OK] {path.name}: {len(rows)} ranks in {elapsed:.1f} s, "
                  f"E {e_min:.5f}..{e_max:.5f} ({spread:.3f} points)")
            if e_min < 0.99:
                self.deviations.append(f"{path.name}: E drops to {e_min:.5f} below 0.99")
            if elapsed >= 120.0:
                self.deviations.append(f"{path.name}: sweep took {elapsed:.1f} s")
            self.sweeps.append(rows)

    def check_averages(self):
        print("\n" + "=" * 60)
        print("AVERAGED ZONES")
        print("=" * 60)
        averaged = average_sweeps(self.sweeps)
        for s in summarize_zones(averaged):
            print(f"  zone {s.zone:>5}  k {s.k_min}..{s.k_max}  "
                  f"PSNR {format_db(s.psnr_min_db)}..{format_db(s.psnr_max_db)}  "
                  f"SSIM {s.ssim_min:.4f}..{s.ssim_max:.4f}  E% {s.e_min_pct:.3f}..{s.e_max_pct:.3f}  "
                  f"{s.appreciation}")

        rows = {row.k: row for row in averaged}
        for (k_lo, k_hi), e_lo, e_hi in EXPECTED_BANDS:
            for k in range(k_lo, k_hi + 1):
                if k not in rows:
                    continue
                e = rows[k].energy_ratio
                inside = e_lo <= e <= e_hi if e_hi == 1.0 else e_lo <= e < e_hi
                if not inside:
                    self.deviations.append(f"k={k}: average E {e:.5f} outside [{e_lo}, {e_hi})")

        if 40 in rows:
            row = rows[40]
            print(f"\n  k=40: E {row.energy_ratio:.5f}  PSNR {format_db(row.psnr_db)}  SSIM {row.ssim:.4f}")
            if not K40_PSNR[0] <= row.psnr_db <= K40_PSNR[1]:
                self.deviations.append(f"k=40: average PSNR {row.psnr_db:.2f} dB outside {K40_PSNR}")
            if not K40_SSIM[0] <= row.ssim <= K40_SSIM[1]:
                self.deviations.append(f"k=40: average SSIM {row.ssim:.4f} outside {K40_SSIM}")

    def report(self):
        print("\n" + "=" * 60)
        print("DEVIATIONS")
        print("=" * 60)
        if not self.deviations:
            print("  none")
        for line in self.deviations:
            print(f"  [WARN] {line}")


def main():
    parser = argparse.ArgumentParser(description="audit averaged sweep quality over natural images")
    parser.add_argument("directory", type=Path)
    parser.add_argument("--ks")
    args = parser.parse_args()

    auditor = NaturalImageAuditor(args.directory, args.ks)
    if len(auditor.paths) < 3:
        print(f"need at least 3 PGM images in {args.directory}, found {len(auditor.paths)}")
        return 2
    auditor.run()
    auditor.check_averages()
    auditor.report()
    return 0


if __name__ == "__main__":
    sys.exit(main())

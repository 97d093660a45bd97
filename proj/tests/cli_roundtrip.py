#!/usr/bin/env python3
"""PNG files written and read by the CLI agree with an independent decoder."""

import subprocess
import sys
from pathlib import Path

from PIL import Image


def run(cli, *args):
    result = subprocess.run([cli, *args], capture_output=True, text=True)
    if result.returncode != 0:
        sys.exit(f"{' '.join(args)} exited {result.returncode}: {result.stderr}")
    return result.stdout


def main():
    cli, work = sys.argv[1], Path(sys.argv[2])
    work.mkdir(parents=True, exist_ok=True)

    for mode in ("RGB", "RGBA"):
        src = Image.new(mode, (64, 48))
        src.putdata([(4 * x, 5 * y, (x * y) % 256, 255 - x)[: len(mode)]
                     for y in range(48) for x in range(64)])
        path_in = work / f"gradient_{mode}.png"
        path_out = work / f"gradient_{mode}_out.png"
        src.save(path_in)
        run(cli, "process", "--in", str(path_in), "--out", str(path_out), "--mode", "none")
        got = Image.open(path_out).convert("RGBA")
        if got.tobytes() != src.convert("RGBA").tobytes():
            sys.exit(f"{mode} gradient changed on a mode-none round trip")

    scene = work / "scene.png"
    ref = work / "ref.png"
    run(cli, "synth", "--slope", "1/3", "--intercept", "4", "--size", "30x20",
        "--out", str(scene), "--reference", str(ref))
    img = Image.open(scene).convert("RGB")
    if img.size != (30, 20):
        sys.exit(f"synth wrote size {img.size}")
    # Pixel centre rule: 2y + 1 <= (2x + 1) / 3 + 8.
    for y in range(20):
        for x in range(30):
            inside = 3 * (2 * y + 1) <= (2 * x + 1) + 24
            want = (255, 255, 255) if inside else (0, 0, 0)
            if img.getpixel((x, y)) != want:
                sys.exit(f"synth pixel ({x}, {y}) is {img.getpixel((x, y))}")
    with Image.open(ref) as reference:
        if reference.size != (30, 20):
            sys.exit("reference has the wrong size")

    out = work / "scene_aa.png"
    run(cli, "process", "--in", str(scene), "--out", str(out))
    aa = Image.open(out).convert("RGB")
    if aa == img:
        sys.exit("processing a stepped line changed nothing")
    print("ok")


if __name__ == "__main__":
    main()

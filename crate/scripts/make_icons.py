#!/usr/bin/env python3
"""Draws the bundled topic icons into crates/core/data/icons/.

Simple dark-on-light silhouettes, one connected blob per topic. Run
`lemotif icons --input crates/core/data/icons --out crates/core/data/shapes`
afterwards to regenerate the shape masks.
"""
import math
import pathlib

from PIL import Image, ImageDraw

SIZE = 256
OUT = pathlib.Path(__file__).resolve().parent.parent / "crates/core/data/icons"


def canvas():
    img = Image.new("L", (SIZE, SIZE), 255)
    return img, ImageDraw.Draw(img)


def exercise(d):
    # kettlebell
    d.ellipse([40, 80, 216, 244], fill=0)
    d.ellipse([64, 12, 192, 140], fill=0)
    d.ellipse([92, 40, 164, 112], fill=255)
    d.ellipse([40, 80, 216, 244], fill=0)


def family(d):
    # house
    d.polygon([(128, 20), (236, 120), (20, 120)], fill=0)
    d.rectangle([44, 118, 212, 236], fill=0)


def food(d):
    # apple with a stem
    d.ellipse([28, 56, 228, 244], fill=0)
    d.polygon([(120, 12), (140, 12), (156, 80), (104, 80)], fill=0)


def friends(d):
    # two heads over shared shoulders
    for cx in (96, 160):
        d.ellipse([cx - 44, 24, cx + 44, 112], fill=0)
    d.rounded_rectangle([16, 64, 240, 240], radius=64, fill=0)


def god(d):
    # cross
    d.rectangle([108, 16, 148, 240], fill=0)
    d.rectangle([48, 66, 208, 106], fill=0)


def health(d):
    # medical plus
    d.rectangle([92, 24, 164, 232], fill=0)
    d.rectangle([24, 92, 232, 164], fill=0)


def love(d):
    # heart
    d.ellipse([24, 40, 136, 152], fill=0)
    d.ellipse([120, 40, 232, 152], fill=0)
    d.polygon([(30, 120), (226, 120), (128, 236)], fill=0)


def recreation(d):
    # five-pointed star
    pts = []
    for i in range(10):
        r = 116 if i % 2 == 0 else 48
        a = math.radians(-90 + 36 * i)
        pts.append((128 + r * math.cos(a), 136 + r * math.sin(a)))
    d.polygon(pts, fill=0)


def school(d):
    # mortarboard
    d.polygon([(128, 40), (244, 96), (128, 152), (12, 96)], fill=0)
    d.rectangle([64, 110, 192, 190], fill=0)


def sleep(d):
    # crescent moon
    img = Image.new("L", (SIZE, SIZE), 255)
    m = ImageDraw.Draw(img)
    m.ellipse([20, 20, 236, 236], fill=0)
    m.ellipse([86, 4, 268, 186], fill=255)
    d._image.paste(img)


def work(d):
    # briefcase
    d.rounded_rectangle([16, 80, 240, 220], radius=16, fill=0)
    d.rectangle([90, 44, 166, 82], fill=0)
    d.rectangle([104, 58, 152, 82], fill=255)


DRAW = {f.__name__: f for f in [
    exercise, family, food, friends, god, health, love, recreation, school, sleep, work,
]}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, f in DRAW.items():
        img, d = canvas()
        f(d)
        img.save(OUT / f"{name}.png", optimize=True)
        print(name)


if __name__ == "__main__":
    main()

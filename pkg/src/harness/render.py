"""Scene rendering: sensor network, ground-truth tracks and one sensor's scan."""

from pathlib import Path

import numpy as np
from PIL import Image, ImageDraw

from src.model.sensor import Region
from src.sim.bundle import ScenarioBundle


def render_scene(
    bundle: ScenarioBundle,
    region: Region,
    output_path: Path,
    time_step: int = 1,
    sensor: int = 0,
    image_size: int = 768,
) -> None:
    """
    Draw one frame of a simulated run.

    Grey lines are the communication links at `time_step`, blue squares the
    sensors, coloured polylines the ground-truth tracks (a ring marks each
    initial position) and black dots `sensor`'s measurements at `time_step`.

    Args:
        bundle: Simulated run
        region: Area mapped onto the image
        output_path: Path where the PNG should be saved
        time_step: 1-indexed step for links and measurements
        sensor: Whose measurements to draw
        image_size: Size of the output image in pixels
    """
    margin = image_size // 20
    span = image_size - 2 * margin
    scale = span / max(region.x_max - region.x_min, region.y_max - region.y_min)

    def to_pixels(points: np.ndarray) -> list[tuple[float, float]]:
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        x = margin + (points[:, 0] - region.x_min) * scale
        y = margin + (region.y_max - points[:, 1]) * scale
        return list(zip(x.tolist(), y.tolist(), strict=True))

    img = Image.new("RGB", (image_size, image_size), "white")
    draw = ImageDraw.Draw(img)
    draw.rectangle([margin, margin, margin + span, margin + span], outline="black")

    positions = to_pixels(bundle.sensor_positions)
    snapshot = bundle.network[time_step - 1][0]
    rows, cols = np.nonzero(np.triu(snapshot.adjacency))
    for i, j in zip(rows, cols, strict=True):
        draw.line([positions[i], positions[j]], fill=(170, 170, 170), width=1)

    for x, y in to_pixels(bundle.scans[time_step - 1][sensor].measurements):
        draw.ellipse([x - 1.5, y - 1.5, x + 1.5, y + 1.5], fill="black")

    truth = bundle.truth
    for k in range(truth.num_objects):
        hue = (k * 67) % 256
        color = (hue, 255 - hue, (hue * 3) % 256)
        track = np.vstack([truth.initial[k, [0, 2]], truth.states[:, k][:, [0, 2]]])
        draw.line(to_pixels(track), fill=color, width=2)
        x0, y0 = to_pixels(truth.initial[k, [0, 2]])[0]
        draw.ellipse([x0 - 4, y0 - 4, x0 + 4, y0 + 4], outline=color, width=2)

    for x, y in positions:
        draw.rectangle([x - 4, y - 4, x + 4, y + 4], fill=(30, 80, 200))

    output_path.parent.mkdir(parents=True, exist_ok=True)
    img.save(output_path)

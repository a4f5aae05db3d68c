/** Linear black-white degradation: 0 maps to white (255), vmax to black (0).
 * Values are clamped; a non-positive vmax renders everything white. */
export function grayLevel(value: number, vmax: number): number {
    if (!(vmax > 0)) return 255;
    const t = Math.min(Math.max(value / vmax, 0), 1);
    return Math.round(255 * (1 - t));
}

/** Resolve "auto" to the data maximum. */
export function resolveVmax(vmax: number | "auto", values: Iterable<number>): number {
    if (vmax !== "auto") {
        if (!(vmax >= 0)) throw new Error(`vmax must be >= 0 or "auto", got ${vmax}`);
        return vmax;
    }
    let max = 0;
    for (const v of values) if (v > max) max = v;
    return max;
}

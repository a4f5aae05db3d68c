import { grayLevel, resolveVmax } from "./colormap";
import { CsvTable } from "./csv";
import { GrayImage } from "./png";

export interface HeatmapGrid {
    taus: number[]; // ascending
    intensities: number[]; // ascending
    values: number[][]; // values[i][j] at (intensities[i], taus[j])
}

const EXPECTED_COLUMNS = ["tau", "mean_n", "concurrence"];

/** Rebuild the rectangular (tau, mean_n) grid from CSV rows, in any row
 * order. Every (tau, mean_n) pair must appear exactly once. */
export function assembleGrid(table: CsvTable): HeatmapGrid {
    if (JSON.stringify(table.columns) !== JSON.stringify(EXPECTED_COLUMNS)) {
        throw new Error(
            `expected columns ${EXPECTED_COLUMNS.join(",")}, got ${table.columns.join(",")}`
        );
    }
    if (table.rows.length === 0) throw new Error("heatmap CSV has no data rows");

    const taus = [...new Set(table.rows.map((r) => r[0]))].sort((a, b) => a - b);
    const intensities = [...new Set(table.rows.map((r) => r[1]))].sort((a, b) => a - b);
    if (taus.length * intensities.length !== table.rows.length) {
        throw new Error(
            `grid is not rectangular: ${taus.length} tau values x ${intensities.length} ` +
                `intensities != ${table.rows.length} rows`
        );
    }
    const tauIndex = new Map(taus.map((t, j) => [t, j]));
    const intIndex = new Map(intensities.map((m, i) => [m, i]));
    const values: number[][] = intensities.map(() => new Array(taus.length).fill(NaN));
    const seen = new Set<number>();
    for (const [tau, mean, value] of table.rows) {
        const i = intIndex.get(mean)!;
        const j = tauIndex.get(tau)!;
        const flat = i * taus.length + j;
        if (seen.has(flat)) {
            throw new Error(`duplicate grid cell at tau=${tau}, mean_n=${mean}`);
        }
        seen.add(flat);
        values[i][j] = value;
    }
    return { taus, intensities, values };
}

/** One pixel per grid cell (scaled up by `scale`), x = tau axis, y = mean
 * photon number increasing upward, linear white-to-black in concurrence. */
export function renderHeatmap(
    grid: HeatmapGrid,
    vmax: number | "auto" = "auto",
    scale: number = 1
): GrayImage {
    if (!Number.isInteger(scale) || scale < 1) throw new Error("scale must be a positive integer");
    const resolved = resolveVmax(vmax, grid.values.flat());
    const nx = grid.taus.length;
    const ny = grid.intensities.length;
    const width = nx * scale;
    const height = ny * scale;
    const pixels = new Uint8Array(width * height);
    for (let i = 0; i < ny; i++) {
        const rowTop = (ny - 1 - i) * scale; // highest intensity at the top
        for (let j = 0; j < nx; j++) {
            const g = grayLevel(grid.values[i][j], resolved);
            for (let dy = 0; dy < scale; dy++) {
                const base = (rowTop + dy) * width + j * scale;
                pixels.fill(g, base, base + scale);
            }
        }
    }
    return { width, height, pixels };
}

/** Pixel column range occupied by a tau value (for tests and tooling). */
export function tauToColumn(grid: HeatmapGrid, tau: number, scale: number = 1): number {
    let best = 0;
    for (let j = 1; j < grid.taus.length; j++) {
        if (Math.abs(grid.taus[j] - tau) < Math.abs(grid.taus[best] - tau)) best = j;
    }
    return best * scale;
}

/** Pixel row for an intensity value (y axis points up). */
export function intensityToRow(grid: HeatmapGrid, mean: number, scale: number = 1): number {
    let best = 0;
    for (let i = 1; i < grid.intensities.length; i++) {
        if (Math.abs(grid.intensities[i] - mean) < Math.abs(grid.intensities[best] - mean)) best = i;
    }
    return (grid.intensities.length - 1 - best) * scale;
}

import { CsvTable } from "./csv";
import { GrayImage } from "./png";

export interface SeriesData {
    taus: number[];
    values: number[];
}

const EXPECTED_COLUMNS = ["tau", "time", "concurrence"];

export function seriesFromTable(table: CsvTable): SeriesData {
    if (JSON.stringify(table.columns) !== JSON.stringify(EXPECTED_COLUMNS)) {
        throw new Error(
            `expected columns ${EXPECTED_COLUMNS.join(",")}, got ${table.columns.join(",")}`
        );
    }
    if (table.rows.length === 0) throw new Error("series CSV has no data rows");
    const rows = [...table.rows].sort((a, b) => a[0] - b[0]);
    return { taus: rows.map((r) => r[0]), values: rows.map((r) => r[2]) };
}

export interface SeriesLayout {
    width: number;
    height: number;
    marginLeft: number;
    marginRight: number;
    marginTop: number;
    marginBottom: number;
}

export const DEFAULT_LAYOUT: SeriesLayout = {
    width: 800,
    height: 400,
    marginLeft: 50,
    marginRight: 15,
    marginTop: 15,
    marginBottom: 35,
};

/** Line plot of concurrence against tau/pi: white background, black curve,
 * gray frame, light gridlines at tau/pi integers and C in {0, 0.5, 1}. */
export function renderSeries(series: SeriesData, layout: SeriesLayout = DEFAULT_LAYOUT): GrayImage {
    const { width, height } = layout;
    const pixels = new Uint8Array(width * height).fill(255);
    const x0 = layout.marginLeft;
    const x1 = width - layout.marginRight - 1;
    const y0 = layout.marginTop;
    const y1 = height - layout.marginBottom - 1;
    const plotW = x1 - x0;
    const plotH = y1 - y0;
    if (plotW < 10 || plotH < 10) throw new Error("layout leaves no room for the plot area");

    const tauLo = series.taus[0];
    const tauHi = series.taus[series.taus.length - 1];
    const span = tauHi > tauLo ? tauHi - tauLo : 1;
    const yOf = (c: number) => y1 - Math.round(Math.min(Math.max(c, 0), 1) * plotH);

    // gridlines: tau/pi integers vertically, concurrence 0/0.5/1 horizontally
    for (let k = Math.ceil(tauLo / Math.PI); k * Math.PI <= tauHi + 1e-12; k++) {
        const x = x0 + Math.round(((k * Math.PI - tauLo) / span) * plotW);
        for (let y = y0; y <= y1; y++) pixels[y * width + x] = Math.min(pixels[y * width + x], 230);
    }
    for (const level of [0, 0.5, 1]) {
        const y = yOf(level);
        for (let x = x0; x <= x1; x++) pixels[y * width + x] = Math.min(pixels[y * width + x], 230);
    }

    // frame
    for (let x = x0; x <= x1; x++) {
        pixels[y0 * width + x] = 120;
        pixels[y1 * width + x] = 120;
    }
    for (let y = y0; y <= y1; y++) {
        pixels[y * width + x0] = 120;
        pixels[y * width + x1] = 120;
    }

    // curve: sample per pixel column, connect vertically for continuity
    let prevY: number | null = null;
    for (let px = 0; px <= plotW; px++) {
        const tau = tauLo + (px / plotW) * span;
        const y = yOf(interpolate(series, tau));
        const x = x0 + px;
        const from = prevY === null ? y : Math.min(prevY, y);
        const to = prevY === null ? y : Math.max(prevY, y);
        for (let yy = from; yy <= to; yy++) pixels[yy * width + x] = 0;
        prevY = y;
    }
    return { width, height, pixels };
}

function interpolate(series: SeriesData, tau: number): number {
    const { taus, values } = series;
    if (tau <= taus[0]) return values[0];
    if (tau >= taus[taus.length - 1]) return values[values.length - 1];
    let lo = 0;
    let hi = taus.length - 1;
    while (hi - lo > 1) {
        const mid = (lo + hi) >> 1;
        if (taus[mid] <= tau) lo = mid;
        else hi = mid;
    }
    const w = (tau - taus[lo]) / (taus[hi] - taus[lo]);
    return values[lo] * (1 - w) + values[hi] * w;
}

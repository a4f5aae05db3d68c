import * as fs from "fs";

/** A parsed CSV file as written by the ebeats CLI: optional `# key=value`
 * comment lines, one header row, numeric data rows. */
export interface CsvTable {
    meta: Record<string, string>;
    columns: string[];
    rows: number[][];
}

export function parseCsv(text: string): CsvTable {
    const meta: Record<string, string> = {};
    let columns: string[] | null = null;
    const rows: number[][] = [];

    const lines = text.split(/\r?\n/);
    for (let i = 0; i < lines.length; i++) {
        const line = lines[i].trim();
        if (line.length === 0) continue;
        if (line.startsWith("#")) {
            const body = line.replace(/^#\s*/, "");
            const eq = body.indexOf("=");
            if (eq > 0) meta[body.slice(0, eq)] = body.slice(eq + 1);
            continue;
        }
        if (columns === null) {
            columns = line.split(",").map((c) => c.trim());
            continue;
        }
        const cells = line.split(",").map(Number);
        if (cells.length !== columns.length || cells.some((v) => Number.isNaN(v))) {
            throw new Error(`malformed CSV row at line ${i + 1}: "${lines[i]}"`);
        }
        rows.push(cells);
    }
    if (columns === null) throw new Error("CSV has no header row");
    return { meta, columns, rows };
}

export function readCsv(path: string): CsvTable {
    return parseCsv(fs.readFileSync(path, "utf-8"));
}

/** Caption derived from the CLI's comment header (gamma and g/delta when present). */
export function captionFromMeta(meta: Record<string, string>): string {
    const parts: string[] = [];
    if (meta["scenario"]) parts.push(meta["scenario"]);
    if (meta["gamma"]) parts.push(`gamma=${meta["gamma"]}`);
    if (meta["g_over_delta"]) parts.push(`g/delta=${meta["g_over_delta"]}`);
    if (meta["field"]) parts.push(`field=${meta["field"]}`);
    if (meta["intensity"]) parts.push(`intensity=${meta["intensity"]}`);
    return parts.join(", ");
}

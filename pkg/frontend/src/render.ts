#!/usr/bin/env node
/** Standalone renderer for the ebeats CSV outputs.
 *
 * usage: ebeats-plot --input data.csv --output plot.png
 *                    [--vmax auto|NUMBER] [--mode auto|heatmap|series] [--scale N]
 *
 * Heatmap CSVs (tau,mean_n,concurrence) become grayscale rasters, white at
 * zero concurrence and black at vmax; series CSVs (tau,time,concurrence)
 * become line plots of concurrence against tau/pi. The caption (gamma,
 * g/delta, ... from the CSV comment header) is embedded as a PNG tEXt chunk.
 */

import { captionFromMeta, readCsv } from "./csv";
import { assembleGrid, renderHeatmap } from "./heatmap";
import { writeGrayPng } from "./png";
import { renderSeries, seriesFromTable } from "./series";

interface Args {
    input: string;
    output: string;
    vmax: number | "auto";
    mode: "auto" | "heatmap" | "series";
    scale: number;
}

export function parseArgs(argv: string[]): Args {
    const args: Args = { input: "", output: "", vmax: "auto", mode: "auto", scale: 1 };
    for (let i = 0; i < argv.length; i++) {
        const flag = argv[i];
        const next = () => {
            if (i + 1 >= argv.length) throw new UsageError(`${flag} needs a value`);
            return argv[++i];
        };
        switch (flag) {
            case "--input":
                args.input = next();
                break;
            case "--output":
                args.output = next();
                break;
            case "--vmax": {
                const raw = next();
                args.vmax = raw === "auto" ? "auto" : Number(raw);
                if (args.vmax !== "auto" && !(args.vmax >= 0)) {
                    throw new UsageError(`--vmax must be a number >= 0 or "auto", got ${raw}`);
                }
                break;
            }
            case "--mode": {
                const raw = next();
                if (raw !== "auto" && raw !== "heatmap" && raw !== "series") {
                    throw new UsageError(`--mode must be auto, heatmap or series, got ${raw}`);
                }
                args.mode = raw;
                break;
            }
            case "--scale":
                args.scale = Number(next());
                break;
            default:
                throw new UsageError(`unknown flag ${flag}`);
        }
    }
    if (!args.input || !args.output) throw new UsageError("--input and --output are required");
    return args;
}

export class UsageError extends Error {}

export function run(argv: string[]): void {
    const args = parseArgs(argv);
    const table = readCsv(args.input);
    let mode = args.mode;
    if (mode === "auto") {
        if (table.columns.join(",") === "tau,mean_n,concurrence") mode = "heatmap";
        else if (table.columns.join(",") === "tau,time,concurrence") mode = "series";
        else throw new Error(`cannot infer mode from columns ${table.columns.join(",")}`);
    }
    const text: Record<string, string> = { Software: "ebeats-plot" };
    const caption = captionFromMeta(table.meta);
    if (caption) text["Description"] = caption;

    const image =
        mode === "heatmap"
            ? renderHeatmap(assembleGrid(table), args.vmax, args.scale)
            : renderSeries(seriesFromTable(table));
    writeGrayPng(args.output, image, text);
    console.log(`wrote ${mode} ${image.width}x${image.height} to ${args.output}`);
}

if (require.main === module) {
    try {
        run(process.argv.slice(2));
    } catch (err) {
        console.error(String(err instanceof Error ? err.message : err));
        process.exit(err instanceof UsageError ? 2 : 1);
    }
}

import * as fs from "fs";
import * as os from "os";
import * as path from "path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { readGrayPng, readTextChunks, toPngBuffer, writeGrayPng } from "../src/png";
import { parseArgs, run, UsageError } from "../src/render";

const FIXTURES = path.join(__dirname, "fixtures");
let tmp: string;

beforeAll(() => {
    tmp = fs.mkdtempSync(path.join(os.tmpdir(), "ebeats-plot-"));
});
afterAll(() => {
    fs.rmSync(tmp, { recursive: true, force: true });
});

describe("png roundtrip", () => {
    it("writes and reads grayscale pixels", () => {
        const image = { width: 3, height: 2, pixels: Uint8Array.from([0, 128, 255, 10, 20, 30]) };
        const file = path.join(tmp, "roundtrip.png");
        writeGrayPng(file, image);
        expect(readGrayPng(file)).toEqual(image);
    });

    it("embeds tEXt captions", () => {
        const file = path.join(tmp, "caption.png");
        writeGrayPng(
            file,
            { width: 1, height: 1, pixels: Uint8Array.from([255]) },
            { Description: "werner, gamma=0.818, g/delta=0.01" }
        );
        expect(readTextChunks(file)["Description"]).toBe("werner, gamma=0.818, g/delta=0.01");
        expect(readGrayPng(file).pixels[0]).toBe(255); // chunk does not corrupt the raster
    });

    it("produces stable bytes", () => {
        const image = { width: 2, height: 2, pixels: Uint8Array.from([1, 2, 3, 4]) };
        expect(Buffer.compare(toPngBuffer(image), toPngBuffer(image))).toBe(0);
    });
});

describe("render CLI", () => {
    it("parses flags", () => {
        const args = parseArgs(["--input", "a.csv", "--output", "b.png", "--vmax", "0.5"]);
        expect(args).toEqual({ input: "a.csv", output: "b.png", vmax: 0.5, mode: "auto", scale: 1 });
    });

    it("rejects unknown flags and missing values", () => {
        expect(() => parseArgs(["--frobnicate"])).toThrow(UsageError);
        expect(() => parseArgs(["--input"])).toThrow(UsageError);
        expect(() => parseArgs([])).toThrow(/required/);
    });

    it("auto-detects the heatmap mode and embeds the caption", () => {
        const out = path.join(tmp, "heatmap.png");
        run(["--input", path.join(FIXTURES, "werner_coherent_heatmap.csv"), "--output", out,
             "--vmax", String(8 / 11)]);
        const img = readGrayPng(out);
        expect(img.width).toBe(161);
        expect(img.height).toBe(26);
        const texts = readTextChunks(out);
        expect(texts["Description"]).toContain("gamma=0.818181818");
        expect(texts["Description"]).toContain("g/delta=0.01");
    });

    it("auto-detects the series mode", () => {
        const out = path.join(tmp, "series.png");
        run(["--input", path.join(FIXTURES, "sine_series.csv"), "--output", out]);
        expect(readGrayPng(out).width).toBe(800);
    });

    it("fails on unrecognizable columns", () => {
        const bad = path.join(tmp, "bad.csv");
        fs.writeFileSync(bad, "x,y\n1,2\n");
        expect(() => run(["--input", bad, "--output", path.join(tmp, "x.png")])).toThrow(
            /cannot infer mode/
        );
    });
});

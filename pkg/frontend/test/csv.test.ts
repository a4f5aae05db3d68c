import { describe, expect, it } from "vitest";
import { captionFromMeta, parseCsv } from "../src/csv";

describe("parseCsv", () => {
    it("reads comment metadata, columns and numeric rows", () => {
        const table = parseCsv(
            "# gamma=0.8181\n# g_over_delta=0.01\ntau,mean_n,concurrence\n0,0,0.72\n3.14,0,0.72\n"
        );
        expect(table.meta).toEqual({ gamma: "0.8181", g_over_delta: "0.01" });
        expect(table.columns).toEqual(["tau", "mean_n", "concurrence"]);
        expect(table.rows).toEqual([
            [0, 0, 0.72],
            [3.14, 0, 0.72],
        ]);
    });

    it("rejects rows with a wrong cell count", () => {
        expect(() => parseCsv("a,b\n1,2,3\n")).toThrow(/malformed CSV row at line 2/);
    });

    it("rejects non-numeric cells", () => {
        expect(() => parseCsv("a,b\n1,zap\n")).toThrow(/malformed/);
    });

    it("rejects empty input", () => {
        expect(() => parseCsv("\n\n")).toThrow(/no header/);
    });
});

describe("captionFromMeta", () => {
    it("names gamma and g/delta from a werner header", () => {
        const caption = captionFromMeta({
            scenario: "werner",
            gamma: "0.818181818",
            g_over_delta: "0.01",
        });
        expect(caption).toBe("werner, gamma=0.818181818, g/delta=0.01");
    });

    it("is empty when nothing is known", () => {
        expect(captionFromMeta({})).toBe("");
    });
});

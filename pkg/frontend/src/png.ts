import * as fs from "fs";
import { PNG } from "pngjs";

/** Grayscale raster: row-major, one byte per pixel, 255 = white. */
export interface GrayImage {
    width: number;
    height: number;
    pixels: Uint8Array;
}

export function toPngBuffer(image: GrayImage, text?: Record<string, string>): Buffer {
    const png = new PNG({ width: image.width, height: image.height });
    for (let i = 0; i < image.width * image.height; i++) {
        const g = image.pixels[i];
        png.data[4 * i] = g;
        png.data[4 * i + 1] = g;
        png.data[4 * i + 2] = g;
        png.data[4 * i + 3] = 255;
    }
    let buffer = PNG.sync.write(png, { deflateLevel: 9, deflateStrategy: 0 });
    if (text) {
        for (const [keyword, value] of Object.entries(text)) {
            buffer = insertTextChunk(buffer, keyword, value);
        }
    }
    return buffer;
}

export function writeGrayPng(path: string, image: GrayImage, text?: Record<string, string>): void {
    fs.writeFileSync(path, toPngBuffer(image, text));
}

export function readGrayPng(path: string): GrayImage {
    const png = PNG.sync.read(fs.readFileSync(path));
    const pixels = new Uint8Array(png.width * png.height);
    for (let i = 0; i < pixels.length; i++) pixels[i] = png.data[4 * i];
    return { width: png.width, height: png.height, pixels };
}

// --- tEXt metadata -------------------------------------------------------
// pngjs does not write ancillary chunks, so captions are spliced in as a
// standard tEXt chunk (keyword NUL text) right before IEND.

const CRC_TABLE = (() => {
    const table = new Uint32Array(256);
    for (let n = 0; n < 256; n++) {
        let c = n;
        for (let k = 0; k < 8; k++) c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
        table[n] = c >>> 0;
    }
    return table;
})();

function crc32(data: Buffer): number {
    let crc = 0xffffffff;
    for (let i = 0; i < data.length; i++) {
        crc = CRC_TABLE[(crc ^ data[i]) & 0xff] ^ (crc >>> 8);
    }
    return (crc ^ 0xffffffff) >>> 0;
}

function insertTextChunk(png: Buffer, keyword: string, value: string): Buffer {
    if (!/^[\x20-\x7e]{1,79}$/.test(keyword)) {
        throw new Error(`invalid tEXt keyword: ${keyword}`);
    }
    const body = Buffer.concat([
        Buffer.from(keyword, "latin1"),
        Buffer.from([0]),
        Buffer.from(value, "latin1"),
    ]);
    const chunk = Buffer.alloc(12 + body.length);
    chunk.writeUInt32BE(body.length, 0);
    chunk.write("tEXt", 4, "latin1");
    body.copy(chunk, 8);
    chunk.writeUInt32BE(crc32(chunk.subarray(4, 8 + body.length)), 8 + body.length);

    const iendOffset = png.length - 12; // IEND is always the final 12 bytes
    if (png.toString("latin1", iendOffset + 4, iendOffset + 8) !== "IEND") {
        throw new Error("unexpected PNG layout: IEND not at the tail");
    }
    return Buffer.concat([png.subarray(0, iendOffset), chunk, png.subarray(iendOffset)]);
}

/** Extract tEXt entries (for tests and tooling). */
export function readTextChunks(path: string): Record<string, string> {
    const buffer = fs.readFileSync(path);
    const out: Record<string, string> = {};
    let offset = 8; // PNG signature
    while (offset + 12 <= buffer.length) {
        const length = buffer.readUInt32BE(offset);
        const type = buffer.toString("latin1", offset + 4, offset + 8);
        if (type === "tEXt") {
            const body = buffer.subarray(offset + 8, offset + 8 + length);
            const sep = body.indexOf(0);
            out[body.toString("latin1", 0, sep)] = body.toString("latin1", sep + 1);
        }
        offset += 12 + length;
    }
    return out;
}

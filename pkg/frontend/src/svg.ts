/** SVG renderer: accumulates elements, emits a deterministic document. */

import { Canvas, TextOpts } from "./canvas.js";

const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

function px(v: number): string {
  // fixed decimals keep the output byte-stable and diff-friendly
  return v.toFixed(2).replace(/\.00$/, "");
}

export class SvgCanvas implements Canvas {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}">`,
      `<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>`
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, color: string, strokeWidth = 1): void {
    this.parts.push(
      `<line x1="${px(x1)}" y1="${px(y1)}" x2="${px(x2)}" y2="${px(y2)}" ` +
        `stroke="${color}" stroke-width="${strokeWidth}"/>`
    );
  }

  polyline(points: Array<[number, number]>, color: string, cssClass?: string): void {
    const pts = points.map(([x, y]) => `${px(x)},${px(y)}`).join(" ");
    const cls = cssClass ? ` class="${cssClass}"` : "";
    this.parts.push(
      `<polyline${cls} points="${pts}" fill="none" stroke="${color}" stroke-width="1.5"/>`
    );
  }

  rect(x: number, y: number, w: number, h: number, fill: string, cssClass?: string): void {
    const cls = cssClass ? ` class="${cssClass}"` : "";
    this.parts.push(
      `<rect${cls} x="${px(x)}" y="${px(y)}" width="${px(w)}" height="${px(h)}" fill="${fill}"/>`
    );
  }

  circle(cx: number, cy: number, r: number, fill: string): void {
    this.parts.push(`<circle cx="${px(cx)}" cy="${px(cy)}" r="${px(r)}" fill="${fill}"/>`);
  }

  text(x: number, y: number, s: string, opts: TextOpts = {}): void {
    const anchor = opts.anchor ?? "start";
    const size = opts.size ?? 12;
    const color = opts.color ?? "#222222";
    const transform = opts.vertical ? ` transform="rotate(-90 ${px(x)} ${px(y)})"` : "";
    this.parts.push(
      `<text x="${px(x)}" y="${px(y)}" ${FONT} font-size="${size}" fill="${color}" ` +
        `text-anchor="${anchor}"${transform}>${escapeXml(s)}</text>`
    );
  }

  render(): Buffer {
    return Buffer.from(this.parts.join("\n") + "\n</svg>\n", "utf-8");
  }
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Minimal drawing surface shared by the SVG and PNG renderers. */

export interface TextOpts {
  anchor?: "start" | "middle" | "end";
  size?: number;
  color?: string;
  vertical?: boolean; // rotated -90 degrees around (x, y)
}

export interface Canvas {
  readonly width: number;
  readonly height: number;
  line(x1: number, y1: number, x2: number, y2: number, color: string, strokeWidth?: number): void;
  /** cssClass tags semantic elements (series lines, regime cells) in SVG. */
  polyline(points: Array<[number, number]>, color: string, cssClass?: string): void;
  rect(x: number, y: number, w: number, h: number, fill: string, cssClass?: string): void;
  circle(cx: number, cy: number, r: number, fill: string): void;
  text(x: number, y: number, s: string, opts?: TextOpts): void;
  render(): Buffer;
}

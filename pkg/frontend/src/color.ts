// Display encoding only: the server hands us linear sRGB, we apply the
// standard transfer curve for swatches and canvas fills. This is the one
// piece of color math that lives client-side.

function transfer(linear: number): number {
    const v = Math.min(1, Math.max(0, linear));
    return v <= 0.0031308 ? 12.92 * v : 1.055 * Math.pow(v, 1 / 2.4) - 0.055;
}

export function encodeSrgb(linearRgb: readonly number[]): [number, number, number] {
    return [
        Math.round(255 * transfer(linearRgb[0])),
        Math.round(255 * transfer(linearRgb[1])),
        Math.round(255 * transfer(linearRgb[2])),
    ];
}

export function cssColor(linearRgb: readonly number[], alpha = 1): string {
    const [r, g, b] = encodeSrgb(linearRgb);
    return alpha >= 1 ? `rgb(${r}, ${g}, ${b})` : `rgba(${r}, ${g}, ${b}, ${alpha})`;
}

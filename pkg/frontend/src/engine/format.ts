/**
 * printf-style %g formatting (precision 6), matching the engine's
 * announcement strings digit for digit. C's %g: use exponential notation
 * when the decimal exponent is < -4 or >= the precision, otherwise fixed
 * notation; significant digits capped at the precision; trailing zeros
 * (and a bare decimal point) stripped; exponents are signed, two digits
 * minimum.
 */

export function formatG(value: number, precision = 6): string {
  if (Number.isNaN(value)) return "nan";
  if (!Number.isFinite(value)) return value > 0 ? "inf" : "-inf";
  if (value === 0) return Object.is(value, -0) ? "-0" : "0";

  const exp = decimalExponent(value, precision);
  if (exp < -4 || exp >= precision) {
    let mantissa = value.toExponential(precision - 1);
    const [digits, rawExp] = mantissa.split("e");
    const trimmed = stripTrailingZeros(digits);
    const expNum = parseInt(rawExp, 10);
    const sign = expNum < 0 ? "-" : "+";
    const magnitude = Math.abs(expNum).toString().padStart(2, "0");
    return `${trimmed}e${sign}${magnitude}`;
  }
  const fixed = value.toFixed(Math.max(0, precision - 1 - exp));
  return stripTrailingZeros(fixed);
}

function decimalExponent(value: number, precision: number): number {
  // Exponent after rounding to `precision` significant digits (so 999999.5
  // at precision 6 counts as exponent 6, not 5).
  const rounded = value.toExponential(precision - 1);
  return parseInt(rounded.split("e")[1]!, 10);
}

function stripTrailingZeros(text: string): string {
  if (!text.includes(".")) return text;
  return text.replace(/0+$/, "").replace(/\.$/, "");
}

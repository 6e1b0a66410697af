import {DEG_TO_RAD, degFromRad, radFromDeg} from "./MathUtils.js";
var turn = radFromDeg(360);
console.log(turn.toFixed(4), degFromRad(Math.PI), DEG_TO_RAD > 0);

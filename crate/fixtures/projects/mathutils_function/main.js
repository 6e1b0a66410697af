var MathUtils = require('./MathUtils');

var turn = MathUtils.radFromDeg(360);
console.log(turn.toFixed(4), MathUtils.degFromRad(Math.PI), MathUtils.DEG_TO_RAD > 0);

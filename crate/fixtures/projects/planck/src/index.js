var Math = require('./common/Math');
var Vec2 = require('./common/Vec2');

var v = Vec2(3, 4);
console.log(v.toString());
console.log(Vec2.lengthOf(v), Vec2.isValid(v), Vec2.isValid({ x: NaN, y: 1 }));
console.log(v.clamp(2.5).toString());
console.log(Math.clamp(12, 0, 10), Math.nextPowerOfTwo(17), Math.EPSILON);
console.log(Math.isFinite(Infinity), Math.floor(2.7), Math.PI.toFixed(3));
try {
  Math.assert(NaN);
} catch (e) {
  console.log('caught', e.message);
}

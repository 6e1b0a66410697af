var Vec2 = require('./Vec2');

var a = Vec2(1, 2);
var b = Vec2.clone(a);
Vec2.assert(b);
console.log(a.toString(), b.toString(), Vec2.zero().toString());
console.log(Vec2.isValid(Vec2.neo(1, NaN)), new Vec2() instanceof Vec2);

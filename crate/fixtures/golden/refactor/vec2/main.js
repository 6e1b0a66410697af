import {Vec2, assert, clone, isValid, neo, zero} from "./Vec2.js";
var a = Vec2(1, 2);
var b = clone(a);
assert(b);
console.log(a.toString(), b.toString(), zero().toString());
console.log(isValid(neo(1, NaN)), new Vec2() instanceof Vec2);

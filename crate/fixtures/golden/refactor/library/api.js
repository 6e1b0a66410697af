import {numbers} from "./check.js";
var VERSION = "1.0.0";
var add = function (a, b) {
  numbers(a, b);
  return a + b;
};
var sub = function (a, b) {
  numbers(a, b);
  return a - b;
};
export {VERSION, add, sub};

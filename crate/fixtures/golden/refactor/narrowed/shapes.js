var PI = 3.14159;
var square = function (x) {
  return x * x;
};
var cube = function (x) {
  return x * x * x;
};
var half = function (x) {
  return x / 2;
};
var unit = 1;
export {PI, square};

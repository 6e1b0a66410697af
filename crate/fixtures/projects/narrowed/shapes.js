var shapes = {};
shapes.PI = 3.14159;
shapes.square = function(x) {
  return x * x;
};
shapes.cube = function(x) {
  return x * x * x;
};
shapes.half = function(x) {
  return x / 2;
};
shapes.unit = 1;
module.exports = shapes;

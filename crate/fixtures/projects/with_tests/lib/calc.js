exports.add = function(a, b) {
  return a + b;
};

exports.mul = function(a, b) {
  return a * b;
};

exports.square = function(a) {
  return exports.mul(a, a);
};

var check = require('./check');

exports.VERSION = '1.0.0';

exports.add = function(a, b) {
  check.numbers(a, b);
  return a + b;
};

exports.sub = function(a, b) {
  check.numbers(a, b);
  return a - b;
};

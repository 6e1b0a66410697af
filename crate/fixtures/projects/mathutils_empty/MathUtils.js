var MathUtils = {};

MathUtils.DEG_TO_RAD = Math.PI / 180.0;

MathUtils.radFromDeg = function(degrees) {
  return degrees * MathUtils.DEG_TO_RAD;
};

MathUtils.degFromRad = function(radians) {
  return radians / MathUtils.DEG_TO_RAD;
};

module.exports = MathUtils;

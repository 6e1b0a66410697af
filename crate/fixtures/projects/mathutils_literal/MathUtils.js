var MathUtils = {
  DEG_TO_RAD: Math.PI / 180.0,
  radFromDeg: function(degrees) {
    return degrees * MathUtils.DEG_TO_RAD;
  },
  degFromRad: function(radians) {
    return radians / MathUtils.DEG_TO_RAD;
  }
};
module.exports = MathUtils;

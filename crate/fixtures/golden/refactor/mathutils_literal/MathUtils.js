var DEG_TO_RAD = Math.PI / 180.0;
var radFromDeg = function (degrees) {
  return degrees * DEG_TO_RAD;
};
var degFromRad = function (radians) {
  return radians / DEG_TO_RAD;
};
export {DEG_TO_RAD, radFromDeg, degFromRad};

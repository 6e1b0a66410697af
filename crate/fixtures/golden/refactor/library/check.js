var numbers = function () {
  for (var i = 0; i < arguments.length; i++) {
    if (typeof arguments[i] !== "number") {
      throw new TypeError("not a number: " + arguments[i]);
    }
  }
};
var strict = true;
export {numbers, strict};

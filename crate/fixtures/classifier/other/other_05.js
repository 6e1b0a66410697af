var text = "define(['a'], function () {})";
alert(text);
